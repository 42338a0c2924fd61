#include "nonloc/source.hpp"

#include "nonloc/errors.hpp"
#include "nonloc/nonlinearity.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nonloc {

Source::Source(std::string name, Fn f, Fn f_prime, double lipschitz)
    : name_(std::move(name)), f_(std::move(f)), f_prime_(std::move(f_prime)), lipschitz_(lipschitz) {
    if (!f_ || !f_prime_) {
        throw InvalidArgument("source needs f and f'");
    }
}

namespace {

std::string label(const std::string& id, double p) {
    std::ostringstream os;
    os << id << '(' << p << ')';
    return os.str();
}

}  // namespace

Source lookup_source(std::string_view name) {
    constexpr std::string_view prefix = "lipschitz:";
    if (name.substr(0, prefix.size()) == prefix) {
        name.remove_prefix(prefix.size());
    }
    const PresetName parsed = parse_preset_name(name);
    const std::string& id = parsed.identifier;
    const double inf = std::numeric_limits<double>::infinity();

    if (id == "const") {
        const double c = parsed.parameter.value_or(1.0);
        return {label(id, c), [c](double) { return c; }, [](double) { return 0.0; }, 0.0};
    }
    if (id == "linear") {
        const double k = parsed.parameter.value_or(1.0);
        return {label(id, k), [k](double s) { return k * s; }, [k](double) { return k; }, std::abs(k)};
    }
    if (id == "affine") {
        const double k = parsed.parameter.value_or(0.1);
        return {label(id, k), [k](double s) { return 1.0 + k * s; }, [k](double) { return k; }, std::abs(k)};
    }
    if (id == "square") {
        if (parsed.parameter) {
            throw LookupError("square takes no parameter");
        }
        return {"square", [](double s) { return s * s; }, [](double s) { return 2.0 * s; }, inf};
    }
    if (id == "power") {
        const double q = parsed.parameter.value_or(1.0);
        if (!(q > 0.0)) {
            throw LookupError("power(q) needs q > 0");
        }
        return {label(id, q),
                [q](double s) { return std::copysign(std::pow(std::abs(s), q + 1.0) / (q + 1.0), s); },
                [q](double s) { return std::pow(std::abs(s), q); }, inf};
    }
    if (id == "tanh") {
        const double k = parsed.parameter.value_or(1.0);
        return {label(id, k), [k](double s) { return std::tanh(k * s); },
                [k](double s) {
                    const double c = std::cosh(k * s);
                    return k / (c * c);
                },
                std::abs(k)};
    }
    throw LookupError("unknown source '" + std::string(name) + "'");
}

}  // namespace nonloc
