#include "bsa/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsa/errors.hpp"

namespace bsa {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void Matrix::fill(double v) {
    std::fill(data_.begin(), data_.end(), v);
}

bool Matrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: incompatible shapes " + shape_str(a.rows(), a.cols()) +
                         " x " + shape_str(b.rows(), b.cols()));
    }
    Matrix out(a.rows(), b.cols(), 0.0);
    // k-outer loop keeps row-major access on b; for each (i,j) the partial
    // sums still land in ascending k order.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* out_row = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            const double* b_row = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out_row[j] += aik * b_row[j];
            }
        }
    }
    if (!out.all_finite()) {
        throw DataError("matmul: non-finite entries in product " +
                        shape_str(out.rows(), out.cols()));
    }
    return out;
}

double sigmoid(double x) {
    return 1.0 / (1.0 + std::exp(-x));
}

double tanh_act(double x) {
    return std::tanh(x);
}

void softmax_inplace(std::vector<double>& v) {
    if (v.empty()) return;
    double mx = v[0];
    for (double x : v) mx = std::max(mx, x);
    double sum = 0.0;
    for (double& x : v) {
        x = std::exp(x - mx);
        sum += x;
    }
    for (double& x : v) x /= sum;
}

std::vector<double> softmax(const std::vector<double>& v) {
    std::vector<double> out = v;
    softmax_inplace(out);
    return out;
}

std::uint64_t Rng64::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng64::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng64::uniform(double lo, double hi) {
    if (!(lo < hi)) {
        throw ConfigError("rng_uniform: lo must be < hi, got [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + ")");
    }
    return lo + (hi - lo) * next_unit();
}

std::uint64_t Rng64::next_below(std::uint64_t n) {
    if (n == 0) throw ConfigError("next_below: n must be > 0");
    return next_u64() % n;
}

}  // namespace bsa
