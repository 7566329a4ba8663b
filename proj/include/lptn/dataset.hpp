#ifndef LPTN_DATASET_HPP
#define LPTN_DATASET_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace lptn {

// Design matrix (first column identically one) plus response vector. The unit
// of ingestion and simulation; immutable once built.
class Dataset {
  public:
    Dataset(Eigen::MatrixXd x, Eigen::VectorXd y);

    const Eigen::MatrixXd& x() const { return x_; }
    const Eigen::VectorXd& y() const { return y_; }
    Eigen::Index n() const { return x_.rows(); }
    Eigen::Index p() const { return x_.cols(); }

    // copy with one response replaced; used by the robustness lab
    Dataset with_response(Eigen::Index i, double value) const;

    // copy with one observation removed
    Dataset without_row(Eigen::Index i) const;

  private:
    Eigen::MatrixXd x_;
    Eigen::VectorXd y_;
};

// Shifts every non-intercept column to mean zero. The returned means (zero in
// slot 0) invert the transform exactly.
std::pair<Dataset, Eigen::VectorXd> center_covariates(const Dataset& data);

// Maps coefficients fitted on centered covariates back to the original scale:
// slopes are unchanged, the intercept absorbs -sum_j beta_j * mean_j.
Eigen::VectorXd uncenter_beta(const Eigen::VectorXd& beta, const Eigen::VectorXd& means);

}  // namespace lptn

#endif
