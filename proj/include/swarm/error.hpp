#pragma once

#include <stdexcept>
#include <string>

namespace swarm {

enum class Errc {
    EmptySet,
    DegenerateAngle,
    NotASubset,
    SizeMismatch,
    NotAReferenceRobot,
    NotOrdered,
    CenterCollision,
    GatheringExcluded,
    InvalidPattern,
    BadConfig,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace swarm
