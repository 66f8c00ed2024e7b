#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace streamloc {

// Base class for every failure this library raises on purpose. `name()` is a
// stable machine-readable tag; the CLI prints it in its one-line error output.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define STREAMLOC_DEFINE_ERROR(TYPE)                          \
    class TYPE : public Error {                               \
    public:                                                   \
        explicit TYPE(const std::string& message)             \
            : Error(#TYPE, message) {}                        \
    }

STREAMLOC_DEFINE_ERROR(ConfigError);            // invalid configuration or call preconditions
STREAMLOC_DEFINE_ERROR(DisjointIntervals);      // union of non-touching intervals
STREAMLOC_DEFINE_ERROR(ZeroNorm);               // embedding with no direction
STREAMLOC_DEFINE_ERROR(DimMismatch);            // embeddings of different dimension
STREAMLOC_DEFINE_ERROR(OutOfRange);             // frame index past the end of a stream
STREAMLOC_DEFINE_ERROR(FormatError);            // malformed input file (message carries line number)
STREAMLOC_DEFINE_ERROR(ScorerProtocolError);    // external scorer broke the line protocol
STREAMLOC_DEFINE_ERROR(ScorerTimeout);          // external scorer did not answer in time
STREAMLOC_DEFINE_ERROR(EmptyStream);            // locate over zero frames
STREAMLOC_DEFINE_ERROR(NoTrigger);              // no frame reached c_max and no fallback enabled
STREAMLOC_DEFINE_ERROR(EmptyInterval);          // sampling from an empty interval
STREAMLOC_DEFINE_ERROR(InsufficientBackgrounds); // fewer backgrounds than targets to pair
STREAMLOC_DEFINE_ERROR(MissingQA);              // target clip has no QA annotations
STREAMLOC_DEFINE_ERROR(JoinError);              // records that must join one-to-one do not

#undef STREAMLOC_DEFINE_ERROR

}  // namespace streamloc
