#pragma once

#include <stdexcept>
#include <string>

#include "qmn/rational.hpp"

namespace qmn {

/// The parameter triple (q, mu, nu) of the deformed binomial distribution.
/// Construction enforces |q| < 1 and 0 <= nu <= mu < 1; every operation in
/// this library takes a validated triple.
template <typename Scalar>
class DeformParams {
public:
    DeformParams(Scalar q, Scalar mu, Scalar nu)
        : q_(std::move(q)), mu_(std::move(mu)), nu_(std::move(nu)) {
        if (!(scalar_abs(q_) < Scalar(1))) {
            throw std::invalid_argument("DeformParams: requires |q| < 1");
        }
        if (!(nu_ >= Scalar(0))) {
            throw std::invalid_argument("DeformParams: requires nu >= 0");
        }
        if (!(nu_ <= mu_)) {
            throw std::invalid_argument("DeformParams: requires nu <= mu");
        }
        if (!(mu_ < Scalar(1))) {
            throw std::invalid_argument("DeformParams: requires mu < 1");
        }
    }

    const Scalar& q() const { return q_; }
    const Scalar& mu() const { return mu_; }
    const Scalar& nu() const { return nu_; }

    std::string describe() const {
        return "q=" + to_display_string(q_) + " mu=" + to_display_string(mu_) +
               " nu=" + to_display_string(nu_);
    }

    friend bool operator==(const DeformParams& a, const DeformParams& b) {
        return a.q_ == b.q_ && a.mu_ == b.mu_ && a.nu_ == b.nu_;
    }

private:
    Scalar q_;
    Scalar mu_;
    Scalar nu_;
};

}  // namespace qmn
