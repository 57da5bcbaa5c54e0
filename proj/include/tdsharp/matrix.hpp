#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tdsharp/field.hpp"

namespace tdsharp {

/// Dense row-major matrix over a Field. Zero-width matrices are allowed and
/// are used for empty subspace bases.
class ExactMatrix {
 public:
  ExactMatrix(Field field, std::size_t rows, std::size_t cols);
  ExactMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> data);

  static ExactMatrix identity(const Field& field, std::size_t n);
  static ExactMatrix from_ints(const Field& field, const std::vector<std::vector<long>>& rows);
  static ExactMatrix diagonal(const Field& field, const std::vector<Scalar>& diag);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static ExactMatrix from_columns(const Field& field, std::size_t rows, const std::vector<std::vector<Scalar>>& cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const std::vector<Scalar>& data() const { return data_; }

  std::vector<Scalar> row(std::size_t i) const;
  std::vector<Scalar> column(std::size_t j) const;
  ExactMatrix columns(const std::vector<std::size_t>& idx) const;
  ExactMatrix transpose() const;

  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator-() const;
  ExactMatrix scaled(const Scalar& c) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

  bool is_zero() const;
  bool operator==(const ExactMatrix& o) const;
  Scalar trace() const;

  /// Throws FieldError on an invalid entry.
  void validate() const;
  std::string to_string() const;

 private:
  void check_same_shape(const ExactMatrix& o) const;
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b);

}  // namespace tdsharp
