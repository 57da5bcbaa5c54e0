#include "tdsharp/matrix.hpp"

namespace tdsharp {

ExactMatrix::ExactMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

ExactMatrix::ExactMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> data)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DimensionError("matrix data does not match its shape");
}

ExactMatrix ExactMatrix::identity(const Field& field, std::size_t n) {
  ExactMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

ExactMatrix ExactMatrix::from_ints(const Field& field, const std::vector<std::vector<long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  ExactMatrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
  }
  return m;
}

ExactMatrix ExactMatrix::diagonal(const Field& field, const std::vector<Scalar>& diag) {
  ExactMatrix m(field, diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ExactMatrix ExactMatrix::from_columns(const Field& field, std::size_t rows,
                                      const std::vector<std::vector<Scalar>>& cols) {
  ExactMatrix m(field, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw DimensionError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

std::vector<Scalar> ExactMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Scalar> ExactMatrix::column(std::size_t j) const {
  std::vector<Scalar> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

ExactMatrix ExactMatrix::columns(const std::vector<std::size_t>& idx) const {
  ExactMatrix m(field_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix m(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

void ExactMatrix::check_same_shape(const ExactMatrix& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch();
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shapes differ");
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  check_same_shape(o);
  ExactMatrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = field_.add(data_[i], o.data_[i]);
  return m;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  check_same_shape(o);
  ExactMatrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = field_.sub(data_[i], o.data_[i]);
  return m;
}

ExactMatrix ExactMatrix::operator-() const {
  ExactMatrix m = *this;
  for (auto& a : m.data_) a = field_.neg(a);
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch();
  if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
  ExactMatrix m(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t l = 0; l < cols_; ++l) {
      const Scalar& a = (*this)(i, l);
      if (field_.is_zero(a)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) field_.add_product(m(i, j), a, o(l, j));
    }
  return m;
}

ExactMatrix ExactMatrix::scaled(const Scalar& c) const {
  ExactMatrix m = *this;
  for (auto& a : m.data_) a = field_.mul(a, c);
  return m;
}

std::vector<Scalar> ExactMatrix::apply(const std::vector<Scalar>& v) const {
  if (v.size() != cols_) throw DimensionError("vector length mismatch");
  std::vector<Scalar> out(rows_, field_.zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) field_.add_product(out[i], (*this)(i, j), v[j]);
  return out;
}

bool ExactMatrix::is_zero() const {
  for (const auto& a : data_)
    if (!field_.is_zero(a)) return false;
  return true;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Scalar ExactMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  Scalar t = field_.zero();
  for (std::size_t i = 0; i < rows_; ++i) t = field_.add(t, (*this)(i, i));
  return t;
}

void ExactMatrix::validate() const {
  for (const auto& a : data_) field_.validate(a);
}

std::string ExactMatrix::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ", ";
      out += field_.to_string((*this)(i, j));
    }
    out += "]\n";
  }
  return out;
}

ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b) {
  if (!(a.field() == b.field())) throw FieldMismatch();
  if (a.rows() != b.rows()) throw DimensionError("hstack row mismatch");
  ExactMatrix m(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

}  // namespace tdsharp
