#ifndef LPTN_ERROR_MODEL_HPP
#define LPTN_ERROR_MODEL_HPP

#include <string>

#include "lptn/lptn_distribution.hpp"
#include "lptn/rng.hpp"

namespace lptn {

enum class ErrorKind { Normal, Student, Lptn };

// Standardized error density f: Normal, Student(df), or LPTN(rho).
class ErrorModel {
  public:
    static ErrorModel normal();
    static ErrorModel student(double df);
    static ErrorModel lptn(double rho);

    ErrorKind kind() const { return kind_; }
    double df() const { return df_; }
    const LptnParams& lptn_params() const { return lptn_; }

    double log_density(double z) const;

    // draw from f
    double sample(RngStream& rng) const;

    // "lptn:0.95", "student:4", "normal"; parse accepts the same syntax
    std::string label() const;
    static ErrorModel parse(const std::string& spec);

  private:
    ErrorModel() = default;
    ErrorKind kind_ = ErrorKind::Normal;
    double df_ = 0.0;
    double student_log_norm_ = 0.0;  // log of the Student density normalizer
    LptnParams lptn_{};
};

enum class PriorKind { ReciprocalSigma, Flat };

std::string prior_label(PriorKind prior);
PriorKind parse_prior(const std::string& spec);

}  // namespace lptn

#endif
