#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace leadersel {

/// Base class for all library errors. `name()` is a stable identifier used
/// by the CLI for machine-readable error output.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define LEADERSEL_ERROR_TYPE(ClassName)                               \
    class ClassName : public Error {                                 \
    public:                                                           \
        explicit ClassName(const std::string& what)                   \
            : Error(#ClassName, what) {}                              \
    }

LEADERSEL_ERROR_TYPE(SelfLoop);
LEADERSEL_ERROR_TYPE(DuplicateEdge);
LEADERSEL_ERROR_TYPE(NonPositiveVariance);
LEADERSEL_ERROR_TYPE(Disconnected);
LEADERSEL_ERROR_TYPE(EmptyLeaderSet);
LEADERSEL_ERROR_TYPE(AlreadyLeader);
LEADERSEL_ERROR_TYPE(LeaderTarget);
LEADERSEL_ERROR_TYPE(WalkTimeout);
LEADERSEL_ERROR_TYPE(InvalidK);
LEADERSEL_ERROR_TYPE(AllSamplesDisconnected);
LEADERSEL_ERROR_TYPE(DimensionMismatch);
LEADERSEL_ERROR_TYPE(UnstableStep);
LEADERSEL_ERROR_TYPE(InconsistentOffsets);
LEADERSEL_ERROR_TYPE(CannotConnect);
LEADERSEL_ERROR_TYPE(UnknownExperiment);
LEADERSEL_ERROR_TYPE(ParseError);
LEADERSEL_ERROR_TYPE(InvalidArgument);

#undef LEADERSEL_ERROR_TYPE

} // namespace leadersel
