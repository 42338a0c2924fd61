#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nonloc {

/// The scalar nonlinearity G applied to differences u(x) - u(z).
///
/// Instances are immutable and only obtainable through make_nonlinearity() or
/// the preset lookup, both of which check G(0) = 0, the derivative floor
/// G'(t) >= c0 on a probe set, and consistency of G' with G.
class Nonlinearity {
public:
    using Fn = std::function<double(double)>;

    [[nodiscard]] double operator()(double t) const { return g_(t); }
    [[nodiscard]] double derivative(double t) const { return g_prime_(t); }
    [[nodiscard]] bool has_second_derivative() const noexcept { return static_cast<bool>(g_double_prime_); }
    /// Throws MissingSecondDerivative when G'' was not supplied.
    [[nodiscard]] double second_derivative(double t) const;

    [[nodiscard]] double c0() const noexcept { return c0_; }
    [[nodiscard]] double probe_range() const noexcept { return probe_range_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] bool is_identity() const noexcept { return identity_; }

private:
    friend struct NonlinearityFactory;
    Nonlinearity() = default;

    std::string name_;
    Fn g_;
    Fn g_prime_;
    Fn g_double_prime_;
    double c0_ = 0.0;
    double probe_range_ = 0.0;
    bool identity_ = false;
};

struct NonlinearitySpec {
    std::string name = "custom";
    Nonlinearity::Fn g;
    Nonlinearity::Fn g_prime;
    std::optional<Nonlinearity::Fn> g_double_prime;
    double c0 = 1.0;
    double probe_range = 10.0;
    int probe_count = 401;
};

/// Validates the hypotheses on G and returns the immutable nonlinearity.
/// Throws InvalidArgument for bad c0/probe_range and HypothesisViolation
/// (carrying the offending probe point) when a check fails.
Nonlinearity make_nonlinearity(const NonlinearitySpec& spec);

Nonlinearity make_nonlinearity(Nonlinearity::Fn g, Nonlinearity::Fn g_prime,
                               std::optional<Nonlinearity::Fn> g_double_prime, double c0,
                               double probe_range);

/// Parsed form of a preset name such as "cubic(0.1)".
struct PresetName {
    std::string identifier;
    std::optional<double> parameter;
};

/// Grammar: identifier, optionally followed by one parenthesized decimal.
/// Throws LookupError on malformed input.
PresetName parse_preset_name(std::string_view text);

/// Named presets:
///   identity        G(t) = t,               c0 = 1
///   cubic(e)        G(t) = t + e t^3,       c0 = 1          (default e = 0.1)
///   sine(e)         G(t) = t + e sin t,     c0 = 1 - |e|    (|e| < 1, default 0.5)
///   quadratic(b)    G(t) = t + b t^2,       c0 = 1/2 on |t| <= 1/(4|b|) (default b = 1)
///
/// quadratic() is elliptic only on a bounded range; it exists for the
/// alpha -> 2 limit, which needs G'' but not the global derivative floor.
/// Throws LookupError for unknown names.
Nonlinearity lookup_nonlinearity(std::string_view name, double probe_range = 10.0);

struct NamedNonlinearity {
    std::string name;
    Nonlinearity g;
};

/// One representative of every preset family.
std::vector<NamedNonlinearity> builtin_library(double probe_range = 10.0);

}  // namespace nonloc
