#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lborel {

// Error classes double as CLI exit codes: 1 for bad input data,
// 2 for a failed runtime certificate (compatibility, degree bound).
enum class ErrorClass : int { Data = 1, Certificate = 2 };

class EngineError : public std::runtime_error {
public:
    EngineError(ErrorClass cls, std::string msg)
        : std::runtime_error(std::move(msg)), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }

private:
    ErrorClass cls_;
};

namespace detail {
inline std::string tagged(const char* tag, const std::string& msg) {
    return std::string(tag) + ": " + msg;
}
} // namespace detail

#define LBOREL_ERROR_TYPE(Name, Cls)                                        \
    class Name : public EngineError {                                       \
    public:                                                                 \
        explicit Name(const std::string& msg)                               \
            : EngineError(ErrorClass::Cls, detail::tagged(#Name, msg)) {}   \
    }

LBOREL_ERROR_TYPE(MalformedDocument, Data);
LBOREL_ERROR_TYPE(FailedAxiomCheck, Data);
LBOREL_ERROR_TYPE(InvalidSeries, Data);
LBOREL_ERROR_TYPE(RingMismatch, Data);
LBOREL_ERROR_TYPE(NotInvertible, Data);
LBOREL_ERROR_TYPE(UnsupportedCap, Data);
LBOREL_ERROR_TYPE(UnsupportedDuality, Data);
LBOREL_ERROR_TYPE(UnsupportedProduct, Data);
LBOREL_ERROR_TYPE(OddCodimensionUnsupported, Data);
LBOREL_ERROR_TYPE(OrientationRequired, Data);
LBOREL_ERROR_TYPE(MissingTangent, Data);
LBOREL_ERROR_TYPE(MissingVerticalBundle, Data);
LBOREL_ERROR_TYPE(InvalidGroupData, Data);
LBOREL_ERROR_TYPE(CatalogueDepth, Data);
LBOREL_ERROR_TYPE(UnresolvableStage, Data);
LBOREL_ERROR_TYPE(UncataloguedPair, Data);

LBOREL_ERROR_TYPE(DegreeBoundViolation, Certificate);

// Carries the first offending stage so reports can point at it.
class CompatibilityFailure : public EngineError {
public:
    CompatibilityFailure(int stage, int degree, const std::string& msg)
        : EngineError(ErrorClass::Certificate,
                      detail::tagged("CompatibilityFailure", msg)),
          stage_(stage), degree_(degree) {}
    int stage() const noexcept { return stage_; }
    int degree() const noexcept { return degree_; }

private:
    int stage_;
    int degree_;
};

#undef LBOREL_ERROR_TYPE

} // namespace lborel
