#include "nonloc/errors.hpp"

#include <sstream>

namespace nonloc {

namespace {

std::string hypothesis_message(HypothesisViolation::Kind kind, double at, const std::string& detail) {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
    case HypothesisViolation::Kind::NonzeroAtOrigin:
        os << "G(0)≠0";
        break;
    case HypothesisViolation::Kind::DerivativeBelowFloor:
        os << "G′<c0";
        break;
    case HypothesisViolation::Kind::DerivativeMismatch:
        os << "derivative mismatch";
        break;
    }
    os << " at t=" << at;
    if (!detail.empty()) {
        os << ": " << detail;
    }
    return os.str();
}

}  // namespace

HypothesisViolation::HypothesisViolation(Kind kind, double at, const std::string& detail)
    : Error(hypothesis_message(kind, at, detail)), kind_(kind), at_(at) {}

std::string HypothesisViolation::which() const {
    switch (kind_) {
    case Kind::NonzeroAtOrigin:
        return "G(0)≠0";
    case Kind::DerivativeBelowFloor:
        return "G′<c0";
    case Kind::DerivativeMismatch:
        return "derivative mismatch";
    }
    return "unknown";
}

NonFiniteSample::NonFiniteSample(std::size_t node, double value)
    : Error("non-finite sample " + std::to_string(value) + " at node " + std::to_string(node)), node_(node) {}

BoundaryNode::BoundaryNode(std::size_t node)
    : Error("node " + std::to_string(node) + " lies on the box boundary"), node_(node) {}

EpsTooSmall::EpsTooSmall(double eps, double h)
    : Error("principal-value radius eps=" + std::to_string(eps) + " is smaller than the spacing h=" +
            std::to_string(h)) {}

MissingSecondDerivative::MissingSecondDerivative()
    : Error("nonlinearity has no second derivative; the alpha->2 limit needs G''") {}

SingularJacobian::SingularJacobian(double rcond)
    : Error("Newton Jacobian is numerically singular (rcond=" + std::to_string(rcond) + ")") {}

PlaneOutsideBox::PlaneOutsideBox(int axis, double lambda)
    : Error("plane x_" + std::to_string(axis) + "=" + std::to_string(lambda) + " lies outside the box") {}

UnknownKey::UnknownKey(const std::string& name) : Error("unknown config key '" + name + "'"), name_(name) {}

ConfigTypeError::ConfigTypeError(const std::string& key, const std::string& detail)
    : Error("bad value for '" + key + "': " + detail), key_(key) {}

IoError::IoError(const std::string& path, const std::string& detail)
    : Error(path + ": " + detail), path_(path) {}

}  // namespace nonloc
