#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nonloc {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural hypothesis on G failed at a probe point.
class HypothesisViolation : public Error {
public:
    enum class Kind { NonzeroAtOrigin, DerivativeBelowFloor, DerivativeMismatch };

    HypothesisViolation(Kind kind, double at, const std::string& detail);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double at() const noexcept { return at_; }
    [[nodiscard]] std::string which() const;

private:
    Kind kind_;
    double at_;
};

class LookupError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NonFiniteSample : public Error {
public:
    NonFiniteSample(std::size_t node, double value);
    [[nodiscard]] std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

class BoundaryNode : public Error {
public:
    explicit BoundaryNode(std::size_t node);
    [[nodiscard]] std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

class NotInLAlpha : public Error {
public:
    using Error::Error;
};

class EpsTooSmall : public Error {
public:
    EpsTooSmall(double eps, double h);
};

class MissingSecondDerivative : public Error {
public:
    MissingSecondDerivative();
};

class SingularJacobian : public Error {
public:
    explicit SingularJacobian(double rcond);
};

class PlaneOutsideBox : public Error {
public:
    PlaneOutsideBox(int axis, double lambda);
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class BadStrip : public Error {
public:
    using Error::Error;
};

class BadGeometry : public Error {
public:
    using Error::Error;
};

class UnknownKey : public Error {
public:
    explicit UnknownKey(const std::string& name);
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class ConfigTypeError : public Error {
public:
    ConfigTypeError(const std::string& key, const std::string& detail);
    [[nodiscard]] const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& detail);
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace nonloc
