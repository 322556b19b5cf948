#include "fraclbp/mlkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fraclbp::mlkit {

namespace {

void require_finite(const Matrix& x, const char* what) {
    if (!x.allFinite()) fail(ErrorCode::InvalidArgument, std::string(what) + " contains NaN or infinite values");
}

bool all_rows_equal(const Matrix& x) {
    for (Eigen::Index r = 1; r < x.rows(); ++r) {
        if (x.row(r) != x.row(0)) return false;
    }
    return true;
}

}  // namespace

PcaModel pca_fit(const Matrix& x, double retention) {
    if (x.rows() < 2) fail(ErrorCode::InsufficientData, "PCA needs at least 2 rows");
    if (x.cols() < 1) fail(ErrorCode::InsufficientData, "PCA needs at least 1 column");
    if (!(retention > 0.0 && retention <= 1.0)) fail(ErrorCode::InvalidArgument, "PCA retention must be in (0, 1]");
    require_finite(x, "PCA input");
    if (all_rows_equal(x)) fail(ErrorCode::DegenerateData, "PCA input rows are all identical");

    PcaModel model;
    model.mean = x.colwise().mean().transpose();
    const Matrix centered = x.rowwise() - model.mean.transpose();
    Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinV);
    const Vector power = svd.singularValues().array().square();
    const double total = power.sum();
    if (!(total > 0.0)) fail(ErrorCode::DegenerateData, "PCA input has zero variance");
    model.total_variance = total / static_cast<double>(x.rows());

    const Eigen::Index cap = std::min<Eigen::Index>(x.rows() - 1, x.cols());
    Eigen::Index keep = 0;
    double cumulative = 0.0;
    while (keep < cap) {
        cumulative += power[keep] / total;
        model.variance_ratios.push_back(power[keep] / total);
        ++keep;
        if (cumulative >= retention - 1e-12) break;
    }

    model.components = svd.matrixV().leftCols(keep);
    for (Eigen::Index c = 0; c < keep; ++c) {
        Eigen::Index arg = 0;
        model.components.col(c).cwiseAbs().maxCoeff(&arg);
        if (model.components(arg, c) < 0.0) model.components.col(c) *= -1.0;
    }
    return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& x) {
    if (x.cols() != model.mean.size()) {
        fail(ErrorCode::InvalidArgument, "PCA input has " + std::to_string(x.cols()) + " columns, model expects " +
                                             std::to_string(model.mean.size()));
    }
    return (x.rowwise() - model.mean.transpose()) * model.components;
}

Matrix pca_reconstruct(const PcaModel& model, const Matrix& reduced) {
    if (reduced.cols() != model.retained()) fail(ErrorCode::InvalidArgument, "reduced width does not match PCA model");
    return (reduced * model.components.transpose()).rowwise() + model.mean.transpose();
}

LdaModel lda_fit(const Matrix& x, const std::vector<std::string>& labels, double shrinkage) {
    if (static_cast<std::size_t>(x.rows()) != labels.size()) {
        fail(ErrorCode::InvalidArgument, "LDA: row count and label count differ");
    }
    if (!(shrinkage >= 0.0 && shrinkage <= 1.0)) fail(ErrorCode::InvalidArgument, "LDA shrinkage must be in [0, 1]");
    if (x.cols() < 1) fail(ErrorCode::InsufficientData, "LDA needs at least 1 feature");
    require_finite(x, "LDA input");

    std::map<std::string, std::vector<Eigen::Index>> rows_of;
    for (std::size_t i = 0; i < labels.size(); ++i) rows_of[labels[i]].push_back(static_cast<Eigen::Index>(i));
    if (rows_of.size() < 2) fail(ErrorCode::InsufficientData, "LDA needs at least 2 classes");
    for (const auto& [label, rows] : rows_of) {
        if (rows.size() < 2) fail(ErrorCode::InsufficientData, "LDA class '" + label + "' has fewer than 2 samples");
    }

    const Eigen::Index d = x.cols();
    const auto k = static_cast<Eigen::Index>(rows_of.size());
    LdaModel model;
    model.means = Matrix::Zero(k, d);
    model.priors = Vector::Zero(k);
    Matrix scatter = Matrix::Zero(d, d);
    Eigen::Index c = 0;
    for (const auto& [label, rows] : rows_of) {
        model.labels.push_back(label);
        Matrix block(static_cast<Eigen::Index>(rows.size()), d);
        for (std::size_t i = 0; i < rows.size(); ++i) block.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
        model.means.row(c) = block.colwise().mean();
        const Matrix centered = block.rowwise() - model.means.row(c);
        scatter.noalias() += centered.transpose() * centered;
        model.priors[c] = static_cast<double>(rows.size()) / static_cast<double>(x.rows());
        ++c;
    }

    const auto dof = static_cast<double>(x.rows() - k);
    Matrix cov = scatter / dof;
    const double scale = cov.trace() / static_cast<double>(d);
    cov = (1.0 - shrinkage) * cov + shrinkage * scale * Matrix::Identity(d, d);
    model.covariance = cov;

    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success || !(scale > 0.0)) {
        fail(ErrorCode::SingularCovariance, "pooled covariance is not positive definite");
    }
    model.weights = llt.solve(model.means.transpose());
    model.offsets.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        model.offsets[j] = -0.5 * model.means.row(j).dot(model.weights.col(j)) + std::log(model.priors[j]);
    }
    return model;
}

Vector lda_scores(const LdaModel& model, const Vector& x) {
    if (x.size() != model.dimension()) {
        fail(ErrorCode::UnknownLabelSpace, "sample has " + std::to_string(x.size()) + " features, model expects " +
                                               std::to_string(model.dimension()));
    }
    return model.weights.transpose() * x + model.offsets;
}

Eigen::Index lda_predict_index(const LdaModel& model, const Vector& x) {
    const Vector scores = lda_scores(model, x);
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < scores.size(); ++j) {
        if (scores[j] > scores[best]) best = j;
    }
    return best;
}

std::string lda_predict(const LdaModel& model, const Vector& x) {
    return model.labels[static_cast<std::size_t>(lda_predict_index(model, x))];
}

std::vector<std::string> lda_predict_rows(const LdaModel& model, const Matrix& x) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index r = 0; r < x.rows(); ++r) out.push_back(lda_predict(model, Vector(x.row(r).transpose())));
    return out;
}

Classifier train_classifier(const Matrix& x, const std::vector<std::string>& labels, double retention,
                            double shrinkage) {
    Classifier model;
    model.pca = pca_fit(x, retention);
    model.lda = lda_fit(pca_transform(model.pca, x), labels, shrinkage);
    return model;
}

std::vector<std::string> predict(const Classifier& model, const Matrix& x) {
    return lda_predict_rows(model.lda, pca_transform(model.pca, x));
}

// --- serialization ---------------------------------------------------------

namespace {

constexpr const char* kMagic = "fraclbp-classifier";
constexpr int kVersion = 1;

std::string hex(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

void write_row(std::ostream& out, const char* tag, const auto& values) {
    out << tag;
    for (Eigen::Index i = 0; i < values.size(); ++i) out << ' ' << hex(values(i));
    out << '\n';
}

void write_matrix(std::ostream& out, const char* tag, const Matrix& m) {
    out << tag << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) write_row(out, "row", m.row(r));
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::istringstream line(const std::string& tag) {
        std::string text;
        ++line_no_;
        if (!std::getline(in_, text)) bad("unexpected end of file, expected '" + tag + "'");
        std::istringstream fields(text);
        std::string got;
        fields >> got;
        if (got != tag) bad("expected '" + tag + "', found '" + got + "'");
        return fields;
    }

    std::string rest(const std::string& tag) {
        std::istringstream fields = line(tag);
        std::string value;
        std::getline(fields, value);
        if (!value.empty() && value.front() == ' ') value.erase(0, 1);
        return value;
    }

    double number(std::istringstream& fields) {
        std::string token;
        if (!(fields >> token)) bad("missing number");
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size()) bad("bad number '" + token + "'");
        return v;
    }

    Vector vector(const std::string& tag, Eigen::Index n) {
        std::istringstream fields = line(tag);
        Vector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = number(fields);
        return v;
    }

    Matrix matrix(const std::string& tag) {
        std::istringstream fields = line(tag);
        Eigen::Index rows = -1, cols = -1;
        if (!(fields >> rows >> cols) || rows < 0 || cols < 0) bad("bad matrix shape");
        Matrix m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) m.row(r) = vector("row", cols).transpose();
        return m;
    }

    [[noreturn]] void bad(const std::string& msg) const {
        fail(ErrorCode::CorruptHeader, "classifier file line " + std::to_string(line_no_) + ": " + msg);
    }

private:
    std::istream& in_;
    int line_no_ = 0;
};

}  // namespace

void save_classifier(const Classifier& model, std::ostream& out) {
    out << kMagic << ' ' << kVersion << '\n';
    out << "pca_total_variance " << hex(model.pca.total_variance) << '\n';
    out << "pca_features " << model.pca.mean.size() << '\n';
    write_row(out, "pca_mean", model.pca.mean);
    write_row(out, "pca_ratios", Eigen::Map<const Vector>(model.pca.variance_ratios.data(),
                                                          static_cast<Eigen::Index>(model.pca.variance_ratios.size())));
    write_matrix(out, "pca_components", model.pca.components);
    out << "lda_classes " << model.lda.labels.size() << '\n';
    for (const std::string& label : model.lda.labels) out << "label " << label << '\n';
    write_row(out, "lda_priors", model.lda.priors);
    write_row(out, "lda_offsets", model.lda.offsets);
    write_matrix(out, "lda_means", model.lda.means);
    write_matrix(out, "lda_covariance", model.lda.covariance);
    write_matrix(out, "lda_weights", model.lda.weights);
}

Classifier load_classifier(std::istream& in) {
    Reader r(in);
    Classifier model;
    {
        std::istringstream head = r.line(kMagic);
        int version = 0;
        if (!(head >> version) || version != kVersion) r.bad("unsupported classifier version");
    }
    {
        std::istringstream f = r.line("pca_total_variance");
        model.pca.total_variance = r.number(f);
    }
    Eigen::Index features = 0;
    if (!(r.line("pca_features") >> features) || features < 1) r.bad("bad feature count");
    model.pca.mean = r.vector("pca_mean", features);
    {
        std::istringstream f = r.line("pca_ratios");
        while (!(f >> std::ws).eof()) model.pca.variance_ratios.push_back(r.number(f));
    }
    model.pca.components = r.matrix("pca_components");
    std::size_t classes = 0;
    if (!(r.line("lda_classes") >> classes) || classes < 2) r.bad("bad class count");
    for (std::size_t c = 0; c < classes; ++c) model.lda.labels.push_back(r.rest("label"));
    const auto k = static_cast<Eigen::Index>(classes);
    model.lda.priors = r.vector("lda_priors", k);
    model.lda.offsets = r.vector("lda_offsets", k);
    model.lda.means = r.matrix("lda_means");
    model.lda.covariance = r.matrix("lda_covariance");
    model.lda.weights = r.matrix("lda_weights");

    const Eigen::Index reduced = model.pca.components.cols();
    if (model.pca.components.rows() != features || model.lda.means.rows() != k || model.lda.means.cols() != reduced ||
        model.lda.weights.rows() != reduced || model.lda.weights.cols() != k ||
        static_cast<Eigen::Index>(model.pca.variance_ratios.size()) != reduced) {
        r.bad("matrix shapes are inconsistent");
    }
    return model;
}

}  // namespace fraclbp::mlkit
