#include "wgschwarz/cross_section.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>

#include "wgschwarz/bessel.hpp"

namespace wgs {
namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;

struct SpectrumEntry {
  Real value;
  int m;
  int n;
};

void sort_entries(std::vector<SpectrumEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
    if (x.value != y.value) return x.value < y.value;
    if (x.m != y.m) return x.m < y.m;
    return x.n < y.n;
  });
}

// Deterministic start vectors for the inverse iteration, independent of any
// library distribution implementation.
RealVector seeded_start(Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  RealVector v(n);
  for (Index i = 0; i < n; ++i) {
    v[i] = 2.0 * (static_cast<Real>(gen()) / 18446744073709551616.0) - 1.0;
  }
  return v;
}

// Smallest `count` eigenvalues of the sparse symmetric operator by inverse
// subspace iteration with Rayleigh-Ritz extraction. A block with a few buffer
// columns converges degenerate clusters as a whole (grid symmetries make the
// low modes exactly degenerate, where single-vector deflation stalls).
// `deflate` holds normalized vectors spanning a known kernel to exclude
// (Neumann constants).
std::vector<Real> smallest_eigenvalues(const Eigen::SparseMatrix<Real>& a, int count,
                                       const std::vector<RealVector>& deflate, Real shift,
                                       Real norm_scale) {
  const Index n = a.rows();
  Eigen::SparseMatrix<Real> shifted = a;
  if (shift != 0.0) {
    Eigen::SparseMatrix<Real> id(n, n);
    id.setIdentity();
    shifted += shift * id;
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<Real>> solver;
  solver.compute(shifted);
  if (solver.info() != Eigen::Success) {
    throw NumericError("sparse factorization of the transverse operator failed");
  }

  const Real tol_res = 1e-10 * norm_scale;
  const Index n_free = n - static_cast<Index>(deflate.size());
  const Index m = std::min<Index>(count + 3, n_free);

  const auto project = [&deflate](Eigen::MatrixXd& v) {
    for (const RealVector& w : deflate) {
      v.noalias() -= w * (w.transpose() * v);
    }
  };
  const auto orthonormalize = [n, m](const Eigen::MatrixXd& v) -> Eigen::MatrixXd {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
    return qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
  };

  Eigen::MatrixXd x(n, m);
  for (Index j = 0; j < m; ++j) {
    x.col(j) = seeded_start(n, 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(j));
  }
  project(x);
  x = orthonormalize(x);

  RealVector ritz_values;
  for (int it = 0; it < 1000; ++it) {
    Eigen::MatrixXd y = solver.solve(x);
    project(y);
    if (!y.allFinite()) {
      throw NumericError("inverse iteration produced a degenerate iterate");
    }
    x = orthonormalize(y);
    Eigen::MatrixXd ax = a * x;
    const Eigen::MatrixXd h = x.transpose() * ax;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(0.5 * (h + h.transpose()));
    if (ritz.info() != Eigen::Success) {
      throw NumericError("Rayleigh-Ritz projection failed");
    }
    x = x * ritz.eigenvectors();
    ax = ax * ritz.eigenvectors();
    ritz_values = ritz.eigenvalues();
    bool all_converged = true;
    for (int j = 0; j < count; ++j) {
      if ((ax.col(j) - ritz_values[j] * x.col(j)).norm() > tol_res) {
        all_converged = false;
        break;
      }
    }
    if (all_converged) {
      return std::vector<Real>(ritz_values.data(), ritz_values.data() + count);
    }
  }
  throw NumericError("inverse iteration stagnated before reaching the residual tolerance");
}

}  // namespace

RasterMask parse_mask(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("h=", 0) != 0) {
    throw DomainError("mask file must start with a 'h=<float>' line");
  }
  RasterMask mask;
  try {
    std::size_t used = 0;
    mask.h = std::stod(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw DomainError("mask file has an unparsable cell width: " + line);
  }
  if (!(mask.h > 0)) {
    throw DomainError("mask cell width must be positive");
  }
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(line);
  }
  if (rows.empty()) {
    throw DomainError("mask file has no grid rows");
  }
  const std::size_t cols = rows.front().size();
  mask.cells.resize(static_cast<Index>(rows.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw DomainError("mask rows must all have the same length");
    }
    for (std::size_t jc = 0; jc < cols; ++jc) {
      char c = rows[i][jc];
      if (c != '0' && c != '1') {
        throw DomainError(std::string("mask rows may only contain 0 and 1, got '") + c + "'");
      }
      mask.cells(static_cast<Index>(i), static_cast<Index>(jc)) = (c == '1');
    }
  }
  return mask;
}

RasterMask load_mask(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot open mask file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mask(buf.str());
}

void validate_mask(const RasterMask& mask) {
  if (!(mask.h > 0)) {
    throw DomainError("mask cell width must be positive");
  }
  const Index rows = mask.rows();
  const Index cols = mask.cols();
  Index first = -1;
  Index total = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index jc = 0; jc < cols; ++jc) {
      if (mask.cells(i, jc)) {
        if (first < 0) first = i * cols + jc;
        ++total;
      }
    }
  }
  if (total == 0) {
    throw DomainError("mask has no interior cells");
  }
  // 4-connected flood fill over the interior.
  std::vector<char> seen(static_cast<std::size_t>(rows * cols), 0);
  std::queue<Index> queue;
  queue.push(first);
  seen[static_cast<std::size_t>(first)] = 1;
  Index reached = 0;
  while (!queue.empty()) {
    Index cur = queue.front();
    queue.pop();
    ++reached;
    Index i = cur / cols;
    Index jc = cur % cols;
    const Index di[4] = {-1, 1, 0, 0};
    const Index dj[4] = {0, 0, -1, 1};
    for (int d = 0; d < 4; ++d) {
      Index ni = i + di[d];
      Index nj = jc + dj[d];
      if (ni < 0 || nj < 0 || ni >= rows || nj >= cols) continue;
      if (!mask.cells(ni, nj)) continue;
      Index key = ni * cols + nj;
      if (!seen[static_cast<std::size_t>(key)]) {
        seen[static_cast<std::size_t>(key)] = 1;
        queue.push(key);
      }
    }
  }
  if (reached != total) {
    throw DomainError("mask interior is not 4-connected");
  }
}

int mask_boundary_components(const RasterMask& mask) {
  validate_mask(mask);
  // Pad by one cell so all exterior regions touching the hull merge.
  const Index rows = mask.rows() + 2;
  const Index cols = mask.cols() + 2;
  auto is_exterior = [&](Index i, Index jc) {
    if (i < 1 || jc < 1 || i > mask.rows() || jc > mask.cols()) return true;
    return !mask.cells(i - 1, jc - 1);
  };
  std::vector<char> seen(static_cast<std::size_t>(rows * cols), 0);
  int components = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index jc = 0; jc < cols; ++jc) {
      if (!is_exterior(i, jc) || seen[static_cast<std::size_t>(i * cols + jc)]) continue;
      ++components;
      std::queue<Index> queue;
      queue.push(i * cols + jc);
      seen[static_cast<std::size_t>(i * cols + jc)] = 1;
      while (!queue.empty()) {
        Index cur = queue.front();
        queue.pop();
        Index ci = cur / cols;
        Index cj = cur % cols;
        for (Index di = -1; di <= 1; ++di) {
          for (Index dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            Index ni = ci + di;
            Index nj = cj + dj;
            if (ni < 0 || nj < 0 || ni >= rows || nj >= cols) continue;
            if (!is_exterior(ni, nj)) continue;
            Index key = ni * cols + nj;
            if (!seen[static_cast<std::size_t>(key)]) {
              seen[static_cast<std::size_t>(key)] = 1;
              queue.push(key);
            }
          }
        }
      }
    }
  }
  return components;
}

CrossSection CrossSection::rectangle(Real width, Real height) {
  if (!(width > 0) || !(height > 0)) {
    throw DomainError("rectangle sides must be positive");
  }
  CrossSection s;
  s.kind_ = Kind::Rectangle;
  s.width_ = width;
  s.height_ = height;
  return s;
}

CrossSection CrossSection::disk(Real radius) {
  if (!(radius > 0)) {
    throw DomainError("disk radius must be positive");
  }
  CrossSection s;
  s.kind_ = Kind::Disk;
  s.outer_radius_ = radius;
  return s;
}

CrossSection CrossSection::annulus(Real inner_radius, Real outer_radius) {
  if (!(inner_radius > 0) || !(outer_radius > inner_radius)) {
    throw DomainError("annulus radii must satisfy 0 < inner < outer");
  }
  CrossSection s;
  s.kind_ = Kind::Annulus;
  s.inner_radius_ = inner_radius;
  s.outer_radius_ = outer_radius;
  return s;
}

CrossSection CrossSection::raster(RasterMask mask) {
  validate_mask(mask);
  CrossSection s;
  s.kind_ = Kind::Raster;
  s.mask_ = std::move(mask);
  return s;
}

std::string CrossSection::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Rectangle:
      out << "rectangle " << width_ << " x " << height_;
      break;
    case Kind::Disk:
      out << "disk radius " << outer_radius_;
      break;
    case Kind::Annulus:
      out << "annulus radii " << inner_radius_ << ".." << outer_radius_;
      break;
    case Kind::Raster:
      out << "raster " << mask_.rows() << " x " << mask_.cols() << " cells, h=" << mask_.h;
      break;
  }
  return out.str();
}

TransverseSpectrum rectangle_spectrum(Real width, Real height, BoundaryFamily family, int count) {
  if (!(width > 0) || !(height > 0)) {
    throw DomainError("rectangle sides must be positive");
  }
  if (count <= 0) {
    throw DomainError("spectrum count must be positive");
  }
  const Real side = std::max(width, height);
  int bound = 8;
  for (;;) {
    std::vector<SpectrumEntry> entries;
    const int lo = family == BoundaryFamily::Dirichlet ? 1 : 0;
    for (int m = lo; m <= bound; ++m) {
      for (int n = lo; n <= bound; ++n) {
        if (family == BoundaryFamily::Neumann && m == 0 && n == 0) continue;
        Real rm = static_cast<Real>(m) / width;
        Real rn = static_cast<Real>(n) / height;
        entries.push_back({kPi * std::hypot(rm, rn), m, n});
      }
    }
    sort_entries(entries);
    // Any pair outside the box has m > bound or n > bound, hence a value above
    // pi*bound/side; the first `count` entries are final once below that.
    if (entries.size() >= static_cast<std::size_t>(count) &&
        entries[static_cast<std::size_t>(count) - 1].value <= kPi * bound / side) {
      TransverseSpectrum spectrum{family, {}};
      for (int i = 0; i < count; ++i) {
        spectrum.wavenumbers.push_back(entries[static_cast<std::size_t>(i)].value);
      }
      return spectrum;
    }
    bound *= 2;
  }
}

TransverseSpectrum disk_spectrum(Real radius, BoundaryFamily family, int count) {
  if (!(radius > 0)) {
    throw DomainError("disk radius must be positive");
  }
  if (count <= 0) {
    throw DomainError("spectrum count must be positive");
  }
  Real x_max = 8;
  for (;;) {
    std::vector<SpectrumEntry> entries;
    // j'_{m,1} and j_{m,1} both exceed m, so orders beyond x_max contribute
    // nothing below x_max.
    for (int m = 0; m <= static_cast<int>(x_max) + 1; ++m) {
      std::vector<Real> zeros = family == BoundaryFamily::Dirichlet
                                    ? bessel::j_zeros(m, x_max)
                                    : bessel::j_prime_zeros(m, x_max);
      for (std::size_t n = 0; n < zeros.size(); ++n) {
        entries.push_back({zeros[n], m, static_cast<int>(n) + 1});
        if (m >= 1) {
          entries.push_back({zeros[n], m, static_cast<int>(n) + 1});
        }
      }
    }
    sort_entries(entries);
    if (entries.size() >= static_cast<std::size_t>(count)) {
      TransverseSpectrum spectrum{family, {}};
      for (int i = 0; i < count; ++i) {
        spectrum.wavenumbers.push_back(entries[static_cast<std::size_t>(i)].value / radius);
      }
      return spectrum;
    }
    x_max *= 2;
  }
}

TransverseSpectrum raster_spectrum(const RasterMask& mask, BoundaryFamily family, int count) {
  validate_mask(mask);
  if (count <= 0) {
    throw DomainError("spectrum count must be positive");
  }
  const Index rows = mask.rows();
  const Index cols = mask.cols();
  Eigen::Array<Index, Eigen::Dynamic, Eigen::Dynamic> id(rows, cols);
  id.setConstant(-1);
  Index n = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index jc = 0; jc < cols; ++jc) {
      if (mask.cells(i, jc)) id(i, jc) = n++;
    }
  }
  const int reserve = family == BoundaryFamily::Neumann ? 1 : 0;
  if (n < count + reserve) {
    throw DomainError("mask has fewer interior cells than requested modes");
  }

  const Real inv_h2 = 1.0 / (mask.h * mask.h);
  std::vector<Eigen::Triplet<Real>> triplets;
  triplets.reserve(static_cast<std::size_t>(5 * n));
  for (Index i = 0; i < rows; ++i) {
    for (Index jc = 0; jc < cols; ++jc) {
      if (!mask.cells(i, jc)) continue;
      const Index row = id(i, jc);
      Real diag = 0;
      const Index di[4] = {-1, 1, 0, 0};
      const Index dj[4] = {0, 0, -1, 1};
      for (int d = 0; d < 4; ++d) {
        Index ni = i + di[d];
        Index nj = jc + dj[d];
        bool interior = ni >= 0 && nj >= 0 && ni < rows && nj < cols && mask.cells(ni, nj);
        if (interior) {
          diag += inv_h2;
          triplets.emplace_back(row, id(ni, nj), -inv_h2);
        } else if (family == BoundaryFamily::Dirichlet) {
          // Ghost u_g = -u gives (u - (-u))/h^2 on this face.
          diag += 2.0 * inv_h2;
        }
        // Neumann mirror ghost: face contributes nothing.
      }
      triplets.emplace_back(row, row, diag);
    }
  }
  Eigen::SparseMatrix<Real> a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());

  std::vector<RealVector> deflate;
  Real shift = 0;
  if (family == BoundaryFamily::Neumann) {
    // The constant vector spans the exact kernel; deflate it and shift so the
    // factorization is positive definite.
    RealVector ones = RealVector::Constant(n, 1.0 / std::sqrt(static_cast<Real>(n)));
    deflate.push_back(ones);
    shift = 1.0;
  }
  std::vector<Real> mus = smallest_eigenvalues(a, count, deflate, shift, 8.0 * inv_h2);

  TransverseSpectrum spectrum{family, {}};
  for (Real mu : mus) {
    if (!(mu > 0)) {
      throw NumericError("raster eigenvalue is not positive after kernel removal");
    }
    spectrum.wavenumbers.push_back(std::sqrt(mu));
  }
  return spectrum;
}

TransverseSpectrum transverse_spectrum(const CrossSection& section, BoundaryFamily family,
                                       int count) {
  switch (section.kind()) {
    case CrossSection::Kind::Rectangle:
      return rectangle_spectrum(section.width(), section.height(), family, count);
    case CrossSection::Kind::Disk:
      return disk_spectrum(section.radius(), family, count);
    case CrossSection::Kind::Annulus:
      return raster_spectrum(rasterize_annulus(section.inner_radius(), section.outer_radius()),
                             family, count);
    case CrossSection::Kind::Raster:
      return raster_spectrum(section.mask(), family, count);
  }
  throw DomainError("unknown cross-section kind");
}

int tem_count(const CrossSection& section) {
  switch (section.kind()) {
    case CrossSection::Kind::Rectangle:
    case CrossSection::Kind::Disk:
      return 0;
    case CrossSection::Kind::Annulus:
      return 1;
    case CrossSection::Kind::Raster:
      return mask_boundary_components(section.mask()) - 1;
  }
  throw DomainError("unknown cross-section kind");
}

RasterMask rasterize_annulus(Real inner_radius, Real outer_radius, int cells_across) {
  if (!(inner_radius > 0) || !(outer_radius > inner_radius)) {
    throw DomainError("annulus radii must satisfy 0 < inner < outer");
  }
  if (cells_across < 8) {
    throw DomainError("annulus rasterization needs at least 8 cells across");
  }
  RasterMask mask;
  mask.h = 2.0 * outer_radius / cells_across;
  mask.cells.resize(cells_across, cells_across);
  for (Index i = 0; i < cells_across; ++i) {
    for (Index jc = 0; jc < cells_across; ++jc) {
      Real x = -outer_radius + (static_cast<Real>(jc) + 0.5) * mask.h;
      Real y = -outer_radius + (static_cast<Real>(i) + 0.5) * mask.h;
      Real rho = std::hypot(x, y);
      mask.cells(i, jc) = rho >= inner_radius && rho <= outer_radius;
    }
  }
  return mask;
}

}  // namespace wgs
