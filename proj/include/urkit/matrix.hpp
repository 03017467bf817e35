#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace urkit {

// Dense column-major matrix. Columns are contiguous so the vector kernels
// operate directly on them.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    double* col(std::size_t j) { return data_.data() + j * rows_; }
    const double* col(std::size_t j) const { return data_.data() + j * rows_; }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Labeled regressor matrix. A zero-column design is legal (spec kind None);
// ols_fit rejects it.
struct DesignMatrix {
    Matrix values;
    std::vector<std::string> column_labels;

    std::size_t n() const { return values.rows(); }
    std::size_t m() const { return values.cols(); }
};

// Horizontal concatenation; all pieces must share the row count.
DesignMatrix hcat(const std::vector<DesignMatrix>& pieces);

}  // namespace urkit
