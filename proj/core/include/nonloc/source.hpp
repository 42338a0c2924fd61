#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace nonloc {

/// A named right-hand side f(u) of a Dirichlet problem.
class Source {
public:
    using Fn = std::function<double(double)>;

    /// `lipschitz` is the global Lipschitz constant, or infinity for sources
    /// that are only locally Lipschitz.
    Source(std::string name, Fn f, Fn f_prime, double lipschitz);

    [[nodiscard]] double operator()(double s) const { return f_(s); }
    [[nodiscard]] double derivative(double s) const { return f_prime_(s); }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] double lipschitz() const noexcept { return lipschitz_; }

private:
    std::string name_;
    Fn f_;
    Fn f_prime_;
    double lipschitz_;
};

/// Presets (an optional "lipschitz:" prefix is accepted and ignored):
///   const(c)   f = c
///   linear(k)  f = k s
///   affine(k)  f = 1 + k s
///   square     f = s^2
///   power(q)   f = sign(s) |s|^{q+1} / (q+1)
///   tanh(k)    f = tanh(k s)
/// Throws LookupError.
Source lookup_source(std::string_view name);

}  // namespace nonloc
