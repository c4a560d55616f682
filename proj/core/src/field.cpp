#include "peq/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace peq {

Field3D::Field3D(int nx, int ny, int nz, double value)
    : nx_(nx),
      ny_(ny),
      nz_(nz),
      sx_(static_cast<std::size_t>(nx + 2)),
      sy_(static_cast<std::size_t>(ny + 2)),
      data_(static_cast<std::size_t>(nx + 2) * (ny + 2) * (nz + 2), value) {
  if (nx <= 0 || ny <= 0 || nz <= 0) throw std::invalid_argument("Field3D: non-positive extent");
}

void Field3D::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

std::vector<double> Field3D::interior() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(nx_) * ny_ * nz_);
  for (int k = 0; k < nz_; ++k)
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i) out.push_back((*this)(i, j, k));
  return out;
}

void Field3D::set_interior(std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(nx_) * ny_ * nz_)
    throw std::invalid_argument("Field3D::set_interior: size mismatch");
  std::size_t n = 0;
  for (int k = 0; k < nz_; ++k)
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i) (*this)(i, j, k) = values[n++];
}

void Field3D::axpy(double a, const Field3D& other) {
  for (int k = 0; k < nz_; ++k)
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i) (*this)(i, j, k) += a * other(i, j, k);
}

Field2D::Field2D(int nx, int ny, double value)
    : nx_(nx),
      ny_(ny),
      sx_(static_cast<std::size_t>(nx + 2)),
      data_(static_cast<std::size_t>(nx + 2) * (ny + 2), value) {
  if (nx <= 0 || ny <= 0) throw std::invalid_argument("Field2D: non-positive extent");
}

void Field2D::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

std::vector<double> Field2D::interior() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(nx_) * ny_);
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) out.push_back((*this)(i, j));
  return out;
}

void Field2D::set_interior(std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(nx_) * ny_)
    throw std::invalid_argument("Field2D::set_interior: size mismatch");
  std::size_t n = 0;
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) (*this)(i, j) = values[n++];
}

void Field2D::axpy(double a, const Field2D& other) {
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) (*this)(i, j) += a * other(i, j);
}

}  // namespace peq
