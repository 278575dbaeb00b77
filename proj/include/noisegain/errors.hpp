#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace noisegain {

// All library failures carry a stable machine-readable name (used by the CLI
// for its stderr protocol) plus a human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define NOISEGAIN_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

NOISEGAIN_DEFINE_ERROR(NonPowerOfTwoSize);
NOISEGAIN_DEFINE_ERROR(AsymmetricSpectrum);
NOISEGAIN_DEFINE_ERROR(ZeroField);
NOISEGAIN_DEFINE_ERROR(KernelTooLarge);
NOISEGAIN_DEFINE_ERROR(InvalidRange);
NOISEGAIN_DEFINE_ERROR(InvalidArgument);
NOISEGAIN_DEFINE_ERROR(DegenerateProfile);
NOISEGAIN_DEFINE_ERROR(IndivisibleSize);
NOISEGAIN_DEFINE_ERROR(ConvergenceFailure);
NOISEGAIN_DEFINE_ERROR(NegativeCount);
NOISEGAIN_DEFINE_ERROR(EvenWindow);
NOISEGAIN_DEFINE_ERROR(UnknownPreset);
NOISEGAIN_DEFINE_ERROR(ChannelMismatch);
NOISEGAIN_DEFINE_ERROR(LayoutMismatch);
NOISEGAIN_DEFINE_ERROR(BoundViolated);
NOISEGAIN_DEFINE_ERROR(DuplicateModelId);
NOISEGAIN_DEFINE_ERROR(InsufficientSamples);
NOISEGAIN_DEFINE_ERROR(BadTable);

#undef NOISEGAIN_DEFINE_ERROR

// Power iteration reports how far it got before giving up.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& message, int iterations)
        : Error("NoConvergence", message), iterations_(iterations) {}

    int iterations() const noexcept { return iterations_; }

private:
    int iterations_;
};

}  // namespace noisegain
