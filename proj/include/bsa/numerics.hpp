#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bsa {

// Row-major dense matrix of doubles. Values are immutable once a matrix is
// handed out by an operation; share freely across threads.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* row(std::size_t r) { return data_.data() + r * cols_; }
    const double* row(std::size_t r) const { return data_.data() + r * cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    void fill(double v);
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Standard product. Each output entry accumulates in ascending inner-index
// order, which pins the floating-point result for a given build.
Matrix matmul(const Matrix& a, const Matrix& b);

double sigmoid(double x);
double tanh_act(double x);

// Max-subtracted softmax; output sums to 1.
std::vector<double> softmax(const std::vector<double>& v);
void softmax_inplace(std::vector<double>& v);

// splitmix64. One 64-bit state word; uniform doubles come from the top 53
// bits of each output. Each thread owns its own instance.
class Rng64 {
public:
    explicit Rng64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    // [0, 1)
    double next_unit();

    // [lo, hi); throws ConfigError unless lo < hi
    double uniform(double lo, double hi);

    // [0, n); n must be > 0
    std::uint64_t next_below(std::uint64_t n);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        if (v.size() < 2) return;
        for (std::size_t i = v.size() - 1; i > 0; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i + 1));
            std::swap(v[i], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace bsa
