#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace exlab {

// p has bad reduction for the curve at hand.
class bad_reduction_error : public std::runtime_error {
public:
    explicit bad_reduction_error(std::uint64_t p)
        : std::runtime_error("bad reduction at p = " + std::to_string(p)), p_(p) {}
    std::uint64_t prime() const noexcept { return p_; }

private:
    std::uint64_t p_;
};

// BSGS could not pin down the group order within the retry budget.
class ambiguous_order_error : public std::runtime_error {
public:
    ambiguous_order_error(std::uint64_t p, std::size_t candidates)
        : std::runtime_error("ambiguous group order at p = " + std::to_string(p) + " (" +
                             std::to_string(candidates) + " candidates)"),
          p_(p), candidates_(candidates) {}
    std::uint64_t prime() const noexcept { return p_; }
    std::size_t candidates() const noexcept { return candidates_; }

private:
    std::uint64_t p_;
    std::size_t candidates_;
};

// A fractional-part decision stayed unresolved at the highest precision rung.
class uncertain_error : public std::runtime_error {
public:
    explicit uncertain_error(std::uint64_t p)
        : std::runtime_error("decision uncertain at maximum precision for p = " + std::to_string(p)),
          p_(p) {}
    std::uint64_t prime() const noexcept { return p_; }

private:
    std::uint64_t p_;
};

// Adaptive quadrature failed to reach the requested tolerance.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(double achieved, double requested, std::size_t evals)
        : std::runtime_error("quadrature did not converge: achieved rel. error " +
                             std::to_string(achieved) + " vs requested " + std::to_string(requested) +
                             " after " + std::to_string(evals) + " evaluations"),
          achieved_(achieved), requested_(requested), evals_(evals) {}
    double achieved() const noexcept { return achieved_; }
    double requested() const noexcept { return requested_; }
    std::size_t evals() const noexcept { return evals_; }

private:
    double achieved_, requested_;
    std::size_t evals_;
};

} // namespace exlab
