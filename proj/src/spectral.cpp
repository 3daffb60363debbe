#include "gfz/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gfz/error.hpp"

namespace gfz {

namespace {

void fix_signs(Eigen::MatrixXd& u) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index imax = 0;
    u.col(j).cwiseAbs().maxCoeff(&imax);
    if (u(imax, j) < 0.0) u.col(j) = -u.col(j);
  }
}

void check_dims(const SpectralBasis& basis, const FeatureMatrix& x) {
  if (x.rows() != basis.n())
    fail(ErrorCode::DimensionMismatch, "basis has " + std::to_string(basis.n()) +
                                           " nodes but signal has " + std::to_string(x.rows()) +
                                           " rows");
}

}  // namespace

SpectralBasis eigendecompose(const NormalizedMatrix& m, int cap) {
  switch (m.kind) {
    case NormKind::Sym:
    case NormKind::RenormSym:
    case NormKind::SymLaplacian:
    case NormKind::RenormSymLaplacian: break;
    default:
      fail(ErrorCode::UnsupportedKind,
           std::string("eigendecompose supports sym/renorm-sym and their Laplacians, got ") +
               norm_kind_name(m.kind));
  }
  if (m.n() > cap)
    fail(ErrorCode::Resource, "graph with " + std::to_string(m.n()) +
                                  " nodes exceeds the densification cap " + std::to_string(cap));
  Eigen::MatrixXd dense = Eigen::MatrixXd(m.values);
  // Symmetrize away sparse-product round-off before handing to the solver.
  dense = 0.5 * (dense + dense.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::Numeric, "symmetric eigensolver did not converge");
  SpectralBasis basis;
  basis.lambdas = solver.eigenvalues();
  basis.U = solver.eigenvectors();
  basis.source_kind = m.kind;
  fix_signs(basis.U);
  return basis;
}

FeatureMatrix gft(const SpectralBasis& basis, const FeatureMatrix& x) {
  check_dims(basis, x);
  return basis.U.transpose() * x;
}

FeatureMatrix inverse_gft(const SpectralBasis& basis, const FeatureMatrix& xhat) {
  check_dims(basis, xhat);
  return basis.U * xhat;
}

FeatureMatrix apply_response(const SpectralBasis& basis, const ResponseFn& g,
                             const FeatureMatrix& x, int keep_lowest) {
  check_dims(basis, x);
  int kept = keep_lowest < 0 ? basis.n() : std::min(keep_lowest, basis.n());
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(basis.n());
  for (int i = 0; i < kept; ++i) {
    double v = g(basis.lambdas[i]);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "response is not finite at eigenvalue " << basis.lambdas[i];
      fail(ErrorCode::Numeric, msg.str());
    }
    weights[i] = v;
  }
  return basis.U * (weights.asDiagonal() * (basis.U.transpose() * x));
}

// --- binary cache ----------------------------------------------------------

namespace {

constexpr char kMagic[5] = {'G', 'F', 'Z', 'B', '1'};

void put_u64(std::ostream& out, uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(buf[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double d) {
  uint64_t bits;
  std::memcpy(&bits, &d, 8);
  put_u64(out, bits);
}

double get_f64(std::istream& in) {
  uint64_t bits = get_u64(in);
  double d;
  std::memcpy(&d, &bits, 8);
  return d;
}

}  // namespace

void save_basis(const std::string& path, const SpectralBasis& basis) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write basis cache: " + path);
  out.write(kMagic, sizeof(kMagic));
  put_u64(out, static_cast<uint64_t>(basis.n()));
  for (int i = 0; i < basis.n(); ++i) put_f64(out, basis.lambdas[i]);
  for (int i = 0; i < basis.n(); ++i)
    for (int j = 0; j < basis.n(); ++j) put_f64(out, basis.U(i, j));
  if (!out) fail(ErrorCode::Io, "short write on basis cache: " + path);
}

SpectralBasis load_basis(const std::string& path, NormKind source_kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open basis cache: " + path);
  char magic[5];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    fail(ErrorCode::Parse, path + ": not a basis cache file");
  uint64_t n = get_u64(in);
  if (!in || n == 0 || n > (1u << 20)) fail(ErrorCode::Parse, path + ": bad node count");
  SpectralBasis basis;
  basis.source_kind = source_kind;
  basis.lambdas.resize(static_cast<Eigen::Index>(n));
  basis.U.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (uint64_t i = 0; i < n; ++i) basis.lambdas[static_cast<Eigen::Index>(i)] = get_f64(in);
  for (uint64_t i = 0; i < n; ++i)
    for (uint64_t j = 0; j < n; ++j)
      basis.U(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = get_f64(in);
  if (!in) fail(ErrorCode::Parse, path + ": truncated basis cache");
  return basis;
}

std::string basis_cache_key(const Graph& g, NormKind kind) {
  std::ostringstream key;
  key << std::hex << graph_content_hash(g) << "-" << norm_kind_name(kind);
  return key.str();
}

}  // namespace gfz
