#pragma once

#include <stdexcept>
#include <string>

namespace sharpconst {

struct ZeroScale : std::invalid_argument {
    explicit ZeroScale(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidExponent : std::invalid_argument {
    explicit InvalidExponent(const std::string& what) : std::invalid_argument(what) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct SingularGram : std::runtime_error {
    explicit SingularGram(const std::string& what) : std::runtime_error(what) {}
};

struct LPFailure : std::runtime_error {
    explicit LPFailure(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedDimension : std::invalid_argument {
    explicit UnsupportedDimension(const std::string& what) : std::invalid_argument(what) {}
};

struct InsufficientData : std::invalid_argument {
    explicit InsufficientData(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace sharpconst
