#include "lptn/error_model.hpp"

#include <cmath>

#include "lptn/errors.hpp"
#include "lptn/math.hpp"

namespace lptn {

ErrorModel ErrorModel::normal() {
    ErrorModel m;
    m.kind_ = ErrorKind::Normal;
    return m;
}

ErrorModel ErrorModel::student(double df) {
    if (!(df > 0.0)) throw input_error("student error model: df must be positive");
    ErrorModel m;
    m.kind_ = ErrorKind::Student;
    m.df_ = df;
    m.student_log_norm_ = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                          0.5 * std::log(df * M_PI);
    return m;
}

ErrorModel ErrorModel::lptn(double rho) {
    ErrorModel m;
    m.kind_ = ErrorKind::Lptn;
    m.lptn_ = derive_params(rho);
    return m;
}

double ErrorModel::log_density(double z) const {
    switch (kind_) {
        case ErrorKind::Normal:
            return norm_log_pdf(z);
        case ErrorKind::Student:
            return student_log_norm_ - 0.5 * (df_ + 1.0) * std::log1p(z * z / df_);
        case ErrorKind::Lptn:
            return lptn_log_pdf(z, lptn_);
    }
    return 0.0;  // unreachable
}

double ErrorModel::sample(RngStream& rng) const {
    switch (kind_) {
        case ErrorKind::Normal:
            return rng.normal();
        case ErrorKind::Student:
            return rng.student_t(df_);
        case ErrorKind::Lptn:
            return lptn_sample(lptn_, rng);
    }
    return 0.0;  // unreachable
}

std::string ErrorModel::label() const {
    switch (kind_) {
        case ErrorKind::Normal:
            return "normal";
        case ErrorKind::Student: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "student:%.12g", df_);
            return buf;
        }
        case ErrorKind::Lptn: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "lptn:%.12g", lptn_.rho);
            return buf;
        }
    }
    return {};
}

ErrorModel ErrorModel::parse(const std::string& spec) {
    if (spec == "normal") return normal();
    auto parse_number = [&](std::size_t offset, const char* what) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(spec.substr(offset), &pos);
        } catch (const std::exception&) {
            throw input_error(std::string("error model: bad ") + what + " in '" + spec + "'");
        }
        if (offset + pos != spec.size())
            throw input_error(std::string("error model: bad ") + what + " in '" + spec + "'");
        return v;
    };
    if (spec.rfind("student:", 0) == 0) return student(parse_number(8, "df"));
    if (spec.rfind("lptn:", 0) == 0) return lptn(parse_number(5, "rho"));
    throw input_error("error model: expected normal, student:<df> or lptn:<rho>, got '" + spec +
                      "'");
}

std::string prior_label(PriorKind prior) {
    return prior == PriorKind::ReciprocalSigma ? "recip-sigma" : "flat";
}

PriorKind parse_prior(const std::string& spec) {
    if (spec == "recip-sigma") return PriorKind::ReciprocalSigma;
    if (spec == "flat") return PriorKind::Flat;
    throw input_error("prior: expected recip-sigma or flat, got '" + spec + "'");
}

}  // namespace lptn
