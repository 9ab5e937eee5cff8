#pragma once

#include <stdexcept>
#include <string>

namespace dextwist {

// Base class for all recoverable pipeline errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define DEXTWIST_DEFINE_ERROR(NAME)                     \
    class NAME : public Error {                         \
    public:                                             \
        using Error::Error;                             \
    }

DEXTWIST_DEFINE_ERROR(DegenerateVector);
DEXTWIST_DEFINE_ERROR(NearPiRotation);
DEXTWIST_DEFINE_ERROR(NotARotation);
DEXTWIST_DEFINE_ERROR(DegenerateKeypoints);
DEXTWIST_DEFINE_ERROR(DegenerateTripod);
DEXTWIST_DEFINE_ERROR(ThumbOnAxis);
DEXTWIST_DEFINE_ERROR(MisalignedSeries);
DEXTWIST_DEFINE_ERROR(EmptyMask);
DEXTWIST_DEFINE_ERROR(DegenerateSignal);
DEXTWIST_DEFINE_ERROR(ConfigInvalid);

#undef DEXTWIST_DEFINE_ERROR

} // namespace dextwist
