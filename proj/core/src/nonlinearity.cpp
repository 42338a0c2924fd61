#include "nonloc/nonlinearity.hpp"

#include "nonloc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

namespace nonloc {

struct NonlinearityFactory {
    static Nonlinearity build(const NonlinearitySpec& spec, bool identity) {
        Nonlinearity out;
        out.name_ = spec.name;
        out.g_ = spec.g;
        out.g_prime_ = spec.g_prime;
        if (spec.g_double_prime) {
            out.g_double_prime_ = *spec.g_double_prime;
        }
        out.c0_ = spec.c0;
        out.probe_range_ = spec.probe_range;
        out.identity_ = identity;
        return out;
    }
};

double Nonlinearity::second_derivative(double t) const {
    if (!g_double_prime_) {
        throw MissingSecondDerivative();
    }
    return g_double_prime_(t);
}

namespace {

void validate(const NonlinearitySpec& spec) {
    if (!spec.g || !spec.g_prime) {
        throw InvalidArgument("nonlinearity needs both G and G'");
    }
    if (!(spec.c0 > 0.0) || !std::isfinite(spec.c0)) {
        throw InvalidArgument("ellipticity floor c0 must be positive");
    }
    if (!(spec.probe_range > 0.0) || !std::isfinite(spec.probe_range)) {
        throw InvalidArgument("probe_range must be positive");
    }
    if (spec.probe_count < 2) {
        throw InvalidArgument("probe_count must be at least 2");
    }

    const double g0 = spec.g(0.0);
    if (!(std::abs(g0) <= 1e-14)) {
        std::ostringstream os;
        os.precision(17);
        os << "G(0)=" << g0;
        throw HypothesisViolation(HypothesisViolation::Kind::NonzeroAtOrigin, 0.0, os.str());
    }

    const double range = spec.probe_range;
    const int count = spec.probe_count;
    for (int k = 0; k < count; ++k) {
        const double t = -range + 2.0 * range * static_cast<double>(k) / static_cast<double>(count - 1);
        const double gp = spec.g_prime(t);
        if (!std::isfinite(gp) || gp < spec.c0 * (1.0 - 1e-14)) {
            std::ostringstream os;
            os.precision(17);
            os << "G'(t)=" << gp << " < c0=" << spec.c0;
            throw HypothesisViolation(HypothesisViolation::Kind::DerivativeBelowFloor, t, os.str());
        }
        const double step = 1e-5 * std::max(1.0, std::abs(t));
        const double fd = (spec.g(t + step) - spec.g(t - step)) / (2.0 * step);
        if (std::abs(fd - gp) > 1e-6 * std::max(1.0, std::abs(gp))) {
            std::ostringstream os;
            os.precision(17);
            os << "finite difference " << fd << " vs G'=" << gp;
            throw HypothesisViolation(HypothesisViolation::Kind::DerivativeMismatch, t, os.str());
        }
    }
}

}  // namespace

Nonlinearity make_nonlinearity(const NonlinearitySpec& spec) {
    validate(spec);
    return NonlinearityFactory::build(spec, false);
}

Nonlinearity make_nonlinearity(Nonlinearity::Fn g, Nonlinearity::Fn g_prime,
                               std::optional<Nonlinearity::Fn> g_double_prime, double c0,
                               double probe_range) {
    NonlinearitySpec spec;
    spec.g = std::move(g);
    spec.g_prime = std::move(g_prime);
    spec.g_double_prime = std::move(g_double_prime);
    spec.c0 = c0;
    spec.probe_range = probe_range;
    return make_nonlinearity(spec);
}

PresetName parse_preset_name(std::string_view text) {
    static const std::regex pattern(
        R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(\s*([-+]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][-+]?[0-9]+)?)\s*\))?\s*$)");
    std::match_results<std::string_view::const_iterator> match;
    if (!std::regex_match(text.begin(), text.end(), match, pattern)) {
        throw LookupError("malformed preset name '" + std::string(text) + "'");
    }
    PresetName out;
    out.identifier = match[1].str();
    if (match[2].matched) {
        out.parameter = std::stod(match[2].str());
    }
    return out;
}

namespace {

std::string format_name(const std::string& id, double p) {
    std::ostringstream os;
    os << id << '(' << p << ')';
    return os.str();
}

}  // namespace

Nonlinearity lookup_nonlinearity(std::string_view name, double probe_range) {
    const PresetName parsed = parse_preset_name(name);
    const std::string& id = parsed.identifier;

    NonlinearitySpec spec;
    spec.probe_range = probe_range;

    if (id == "identity") {
        if (parsed.parameter) {
            throw LookupError("identity takes no parameter");
        }
        spec.name = "identity";
        spec.g = [](double t) { return t; };
        spec.g_prime = [](double) { return 1.0; };
        spec.g_double_prime = [](double) { return 0.0; };
        spec.c0 = 1.0;
        validate(spec);
        return NonlinearityFactory::build(spec, true);
    }
    if (id == "cubic") {
        const double e = parsed.parameter.value_or(0.1);
        spec.name = format_name(id, e);
        spec.g = [e](double t) { return t + e * t * t * t; };
        spec.g_prime = [e](double t) { return 1.0 + 3.0 * e * t * t; };
        spec.g_double_prime = [e](double t) { return 6.0 * e * t; };
        spec.c0 = 1.0;
        return make_nonlinearity(spec);
    }
    if (id == "sine") {
        const double e = parsed.parameter.value_or(0.5);
        if (!(std::abs(e) < 1.0)) {
            throw LookupError("sine(e) needs |e| < 1");
        }
        spec.name = format_name(id, e);
        spec.g = [e](double t) { return t + e * std::sin(t); };
        spec.g_prime = [e](double t) { return 1.0 + e * std::cos(t); };
        spec.g_double_prime = [e](double t) { return -e * std::sin(t); };
        spec.c0 = 1.0 - std::abs(e);
        return make_nonlinearity(spec);
    }
    if (id == "quadratic") {
        const double b = parsed.parameter.value_or(1.0);
        spec.name = format_name(id, b);
        spec.g = [b](double t) { return t + b * t * t; };
        spec.g_prime = [b](double t) { return 1.0 + 2.0 * b * t; };
        spec.g_double_prime = [b](double) { return 2.0 * b; };
        spec.c0 = 0.5;
        if (b != 0.0) {
            spec.probe_range = std::min(probe_range, 1.0 / (4.0 * std::abs(b)));
        }
        return make_nonlinearity(spec);
    }
    throw LookupError("unknown nonlinearity '" + std::string(name) + "'");
}

std::vector<NamedNonlinearity> builtin_library(double probe_range) {
    std::vector<NamedNonlinearity> out;
    for (const char* name : {"identity", "cubic(0.1)", "sine(0.5)", "quadratic(1)"}) {
        out.push_back({name, lookup_nonlinearity(name, probe_range)});
    }
    return out;
}

}  // namespace nonloc
