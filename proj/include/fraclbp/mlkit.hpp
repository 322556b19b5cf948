/**
 * @file mlkit.hpp
 * @brief PCA reduction and shrinkage LDA classification.
 *
 * Rows are samples, columns are features. Class indices follow the sorted
 * order of the label strings.
 */
#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "fraclbp/core.hpp"

namespace fraclbp::mlkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultRetention = 0.99;
inline constexpr double kDefaultShrinkage = 1e-4;

struct PcaModel {
    Vector mean;                    ///< column means of the training rows
    Matrix components;              ///< features x retained, orthonormal columns
    std::vector<double> variance_ratios;  ///< explained fraction per retained component
    double total_variance = 0.0;    ///< population variance summed over features

    Eigen::Index retained() const { return components.cols(); }
};

/// Keeps the fewest leading components whose cumulative explained variance
/// reaches `retention`, capped at min(rows - 1, cols). Each component is
/// signed so that its largest-magnitude entry is positive.
PcaModel pca_fit(const Matrix& x, double retention = kDefaultRetention);

Matrix pca_transform(const PcaModel& model, const Matrix& x);

/// Maps reduced rows back to feature space.
Matrix pca_reconstruct(const PcaModel& model, const Matrix& reduced);

struct LdaModel {
    std::vector<std::string> labels;  ///< sorted class labels
    Matrix means;                     ///< classes x features
    Matrix covariance;                ///< pooled within-class, after shrinkage
    Vector priors;
    Matrix weights;                   ///< features x classes, covariance^-1 * mean
    Vector offsets;                   ///< -mean.weights/2 + log prior

    Eigen::Index dimension() const { return means.cols(); }
};

/// Pooled covariance S (divided by n - classes), shrunk to
/// (1 - shrinkage) S + shrinkage (tr S / d) I. Requires >= 2 classes with
/// >= 2 rows each.
LdaModel lda_fit(const Matrix& x, const std::vector<std::string>& labels, double shrinkage = kDefaultShrinkage);

/// Linear discriminant score of every class for one sample.
Vector lda_scores(const LdaModel& model, const Vector& x);

/// Index of the highest score; exact ties go to the lowest index.
Eigen::Index lda_predict_index(const LdaModel& model, const Vector& x);

std::string lda_predict(const LdaModel& model, const Vector& x);

/// Predicts every row of x.
std::vector<std::string> lda_predict_rows(const LdaModel& model, const Matrix& x);

struct Classifier {
    PcaModel pca;
    LdaModel lda;
};

/// PCA on the training rows, then LDA on their projections.
Classifier train_classifier(const Matrix& x, const std::vector<std::string>& labels,
                            double retention = kDefaultRetention, double shrinkage = kDefaultShrinkage);

std::vector<std::string> predict(const Classifier& model, const Matrix& x);

/// Versioned text container; doubles are stored as hexadecimal floats so a
/// reload is bit-exact.
void save_classifier(const Classifier& model, std::ostream& out);
Classifier load_classifier(std::istream& in);

}  // namespace fraclbp::mlkit
