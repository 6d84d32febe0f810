#pragma once

#include <string>
#include <vector>

#include "wgschwarz/types.hpp"

namespace wgs {

// Boundary condition family of the transverse eigenproblem: Neumann modes
// feed the TE branch, Dirichlet modes the TM branch.
enum class BoundaryFamily { Neumann, Dirichlet };

// Pixelated cross-section: cells of width h, true = interior. Row i advances
// along the second coordinate, column j along the first.
struct RasterMask {
  Real h = 0;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> cells;

  Index rows() const { return cells.rows(); }
  Index cols() const { return cells.cols(); }
};

// Parses a mask file: first line "h=<float>", then one row of 0/1 characters
// per grid row. Rows must be nonempty and of equal length.
RasterMask load_mask(const std::string& path);
RasterMask parse_mask(const std::string& text);

// Requires a nonempty, 4-connected interior; throws DomainError otherwise.
void validate_mask(const RasterMask& mask);

// Number of connected components of the exterior, counted with 8-connectivity
// on a one-cell padded grid so the unbounded outside is a single component.
// Equals 1 + (number of holes).
int mask_boundary_components(const RasterMask& mask);

class CrossSection {
 public:
  enum class Kind { Rectangle, Disk, Annulus, Raster };

  static CrossSection rectangle(Real width, Real height);
  static CrossSection disk(Real radius);
  static CrossSection annulus(Real inner_radius, Real outer_radius);
  static CrossSection raster(RasterMask mask);

  Kind kind() const { return kind_; }
  Real width() const { return width_; }
  Real height() const { return height_; }
  Real radius() const { return outer_radius_; }
  Real inner_radius() const { return inner_radius_; }
  Real outer_radius() const { return outer_radius_; }
  const RasterMask& mask() const { return mask_; }

  std::string describe() const;

 private:
  CrossSection() = default;

  Kind kind_ = Kind::Rectangle;
  Real width_ = 0;
  Real height_ = 0;
  Real inner_radius_ = 0;
  Real outer_radius_ = 0;
  RasterMask mask_;
};

// Transverse wavenumbers r, ascending, degenerate values repeated.
struct TransverseSpectrum {
  BoundaryFamily family;
  std::vector<Real> wavenumbers;
};

// First `count` transverse wavenumbers of the rectangle: pi * sqrt((m/w)^2 +
// (n/h)^2) over integer pairs, (0,0) excluded for Neumann, m,n >= 1 for
// Dirichlet. Ties are ordered by (m, n).
TransverseSpectrum rectangle_spectrum(Real width, Real height, BoundaryFamily family, int count);

// Disk of radius R: Dirichlet r = j_{m,n}/R, Neumann r = j'_{m,n}/R; azimuthal
// orders m >= 1 carry multiplicity two.
TransverseSpectrum disk_spectrum(Real radius, BoundaryFamily family, int count);

// Five-point Laplacian on the mask cells with ghost closures (Dirichlet:
// u_ghost = -u, Neumann: u_ghost = u); returns sqrt of the smallest `count`
// discrete eigenvalues, the Neumann constant mode excluded.
TransverseSpectrum raster_spectrum(const RasterMask& mask, BoundaryFamily family, int count);

// Dispatch over the section kind; annuli are rasterized (no closed form used).
TransverseSpectrum transverse_spectrum(const CrossSection& section, BoundaryFamily family,
                                       int count);

// Number of independent TEM modes = boundary components - 1.
int tem_count(const CrossSection& section);

// Cell-centered rasterization of an annulus onto a square grid spanning the
// outer diameter.
RasterMask rasterize_annulus(Real inner_radius, Real outer_radius, int cells_across = 128);

}  // namespace wgs
