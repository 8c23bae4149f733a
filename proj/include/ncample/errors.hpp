#ifndef NCAMPLE_ERRORS_HPP
#define NCAMPLE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncample {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// A polynomial whose binomial-basis coefficient at `exponents` is not an integer.
class NotIntegerValued : public Error {
public:
    NotIntegerValued(std::string exponents, std::string coefficient)
        : Error("polynomial is not integer-valued: binomial-basis coefficient at " + exponents +
                " is " + coefficient),
          exponents_(std::move(exponents)), coefficient_(std::move(coefficient)) {}

    const std::string& exponents() const { return exponents_; }
    const std::string& coefficient() const { return coefficient_; }

private:
    std::string exponents_;
    std::string coefficient_;
};

class EmptyCone : public Error {
public:
    EmptyCone() : Error("ample cone has empty interior") {}
};

/// Matrix (optionally the action of bimodule `index`, 1-based) with |det| != 1.
class NonInvertible : public Error {
public:
    explicit NonInvertible(std::size_t index = 0)
        : Error(index == 0 ? std::string("matrix is not invertible over the integers")
                           : "action of bimodule " + std::to_string(index) +
                                 " is not invertible over the integers"),
          index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class NotNilpotent : public Error {
public:
    NotNilpotent() : Error("matrix is not nilpotent") {}
};

/// Pair (i, j) of 1-based bimodule indices that fail to commute.
class CommutationFail : public Error {
public:
    CommutationFail(const std::string& what, std::size_t i, std::size_t j)
        : Error(what + " commutation fails for bimodules " + std::to_string(i) + " and " +
                std::to_string(j)),
          i_(i), j_(j) {}
    std::size_t first() const { return i_; }
    std::size_t second() const { return j_; }

private:
    std::size_t i_, j_;
};

class MatrixCommutationFail : public CommutationFail {
public:
    MatrixCommutationFail(std::size_t i, std::size_t j) : CommutationFail("matrix", i, j) {}
};

class ClassCommutationFail : public CommutationFail {
public:
    ClassCommutationFail(std::size_t i, std::size_t j) : CommutationFail("class", i, j) {}
};

class UnipotentRequired : public Error {
public:
    explicit UnipotentRequired(std::size_t index)
        : Error("action of bimodule " + std::to_string(index) + " is not unipotent"),
          index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class ArityError : public Error {
public:
    using Error::Error;
};

class NotQuasiUnipotent : public Error {
public:
    explicit NotQuasiUnipotent(std::size_t index)
        : Error("action of bimodule " + std::to_string(index) + " is not quasi-unipotent"),
          index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class NotNCAmple : public Error {
public:
    using Error::Error;
};

class DegenerateHilbert : public Error {
public:
    DegenerateHilbert()
        : Error("Euler characteristic of the twisted classes vanishes identically") {}
};

class DegreeMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace ncample

#endif  // NCAMPLE_ERRORS_HPP
