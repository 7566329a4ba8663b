#include "lptn/dataset.hpp"

#include <sstream>

#include "lptn/errors.hpp"

namespace lptn {

Dataset::Dataset(Eigen::MatrixXd x, Eigen::VectorXd y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.rows() != y_.size())
        throw input_error("dataset: design matrix and response have different lengths");
    if (x_.cols() < 1) throw input_error("dataset: design matrix needs at least one column");
    // n >= p admits exact-interpolation least squares; the Bayesian operations
    // gate on the stricter n > p+1 through validate_propriety
    if (x_.rows() < x_.cols()) {
        std::ostringstream msg;
        msg << "dataset: need n >= p observations, got n = " << x_.rows()
            << " with p = " << x_.cols();
        throw input_error(msg.str());
    }
    for (Eigen::Index i = 0; i < x_.rows(); ++i)
        if (x_(i, 0) != 1.0)
            throw input_error("dataset: first design column must be identically 1");
}

Dataset Dataset::with_response(Eigen::Index i, double value) const {
    Eigen::VectorXd y2 = y_;
    y2(i) = value;
    return Dataset(x_, std::move(y2));
}

Dataset Dataset::without_row(Eigen::Index i) const {
    Eigen::Index n = x_.rows();
    Eigen::MatrixXd x2(n - 1, x_.cols());
    Eigen::VectorXd y2(n - 1);
    Eigen::Index out = 0;
    for (Eigen::Index row = 0; row < n; ++row) {
        if (row == i) continue;
        x2.row(out) = x_.row(row);
        y2(out) = y_(row);
        ++out;
    }
    return Dataset(std::move(x2), std::move(y2));
}

std::pair<Dataset, Eigen::VectorXd> center_covariates(const Dataset& data) {
    Eigen::MatrixXd x = data.x();
    Eigen::VectorXd means = Eigen::VectorXd::Zero(x.cols());
    for (Eigen::Index j = 1; j < x.cols(); ++j) {
        means(j) = x.col(j).mean();
        x.col(j).array() -= means(j);
    }
    return {Dataset(std::move(x), data.y()), means};
}

Eigen::VectorXd uncenter_beta(const Eigen::VectorXd& beta, const Eigen::VectorXd& means) {
    Eigen::VectorXd out = beta;
    for (Eigen::Index j = 1; j < beta.size(); ++j) out(0) -= beta(j) * means(j);
    return out;
}

}  // namespace lptn
