#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>

#include "tinregion/rational.hpp"

namespace tinregion {

// Errors shared by every module. The CLI maps all of them to exit code 1.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "domain"; }
};
struct ParseError : DomainError {
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "parse"; }
};
struct DimensionError : DomainError {
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "dimension"; }
};
struct PreconditionError : DomainError {
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "precondition"; }
};
struct BudgetExceeded : DomainError {
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "budget"; }
};

/// Comparison policy for the two arithmetic modes. Rational comparisons are
/// exact; double comparisons absorb a 1e-9 tolerance so that the regime
/// boundaries behave the same way in both modes for decimal inputs.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static bool leq(const Rational& a, const Rational& b) { return a <= b; }
    static bool less(const Rational& a, const Rational& b) { return a < b; }
    static bool eq(const Rational& a, const Rational& b) { return a == b; }
    static Rational from(const Rational& r) { return r; }
    static double to_double(const Rational& r) { return r.to_double(); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr double tolerance = 1e-9;
    static bool leq(double a, double b) { return a <= b + tolerance; }
    static bool less(double a, double b) { return a < b - tolerance; }
    static bool eq(double a, double b) { return std::abs(a - b) <= tolerance; }
    static double from(const Rational& r) { return r.to_double(); }
    static double to_double(double x) { return x; }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

template <Scalar T>
T scalar_cast(const Rational& r) {
    return ScalarTraits<T>::from(r);
}

template <Scalar T>
double to_double(const T& x) {
    return ScalarTraits<T>::to_double(x);
}

/// A power or level exponent that may be minus infinity. `std::nullopt`
/// stands for -inf: a silent user, or a maximum over an empty set.
template <Scalar T>
using Extended = std::optional<T>;

template <Scalar T>
Extended<T> ext_max(const Extended<T>& a, const Extended<T>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
}

template <Scalar T>
Extended<T> ext_add(const Extended<T>& a, const T& b) {
    if (!a) return std::nullopt;
    return *a + b;
}

/// (x)^+ with (-inf)^+ = 0.
template <Scalar T>
T positive_part(const Extended<T>& x) {
    if (!x || *x < T(0)) return T(0);
    return *x;
}

}  // namespace tinregion
