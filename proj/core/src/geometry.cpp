#include "zipper/geometry.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "zipper/error.hpp"
#include "zipper/pdb.hpp"

namespace zipper {

Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return r;
}

Mat3 transpose(const Mat3& m) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i][j] = m[j][i];
  return r;
}

double determinant(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

RigidTransform RigidTransform::translate(const Vec3& t) {
  RigidTransform r;
  r.translation = t;
  return r;
}

RigidTransform RigidTransform::template_sheet2() {
  RigidTransform r;
  r.rotation = {{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}};
  r.translation = {9.07500, 4.77650, 0.00000};
  return r;
}

void RigidTransform::validate() const {
  for (const auto& row : rotation)
    for (double v : row)
      if (!std::isfinite(v))
        throw DomainError("rotation has non-finite entries");
  if (!translation.is_finite())
    throw DomainError("translation has non-finite entries");
  Mat3 rtr = transpose(rotation) * rotation;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (std::fabs(rtr[i][j] - (i == j ? 1.0 : 0.0)) > 1e-9)
        throw DomainError("rotation is not orthogonal");
  if (std::fabs(std::fabs(determinant(rotation)) - 1.0) > 1e-9)
    throw DomainError("rotation determinant is not +/-1");
}

Vec3 apply_transform(const RigidTransform& t, const Vec3& p) {
  return t.rotation * p + t.translation;
}

RigidTransform compose_transforms(const RigidTransform& a, const RigidTransform& b) {
  RigidTransform r;
  r.rotation = a.rotation * b.rotation;
  r.translation = a.rotation * b.translation + a.translation;
  return r;
}

RigidTransform inverse(const RigidTransform& t) {
  RigidTransform r;
  r.rotation = transpose(t.rotation);
  r.translation = -(r.rotation * t.translation);
  return r;
}

std::string serialize_transform(const RigidTransform& t) {
  std::string out;
  char buf[64];
  auto put = [&](double v) {
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (!out.empty())
      out += ' ';
    out.append(buf, res.ptr);
  };
  for (const auto& row : t.rotation)
    for (double v : row)
      put(v);
  put(t.translation.x);
  put(t.translation.y);
  put(t.translation.z);
  return out;
}

RigidTransform parse_transform(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<double> v;
  std::string tok;
  while (in >> tok) {
    double d = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw DomainError("transform: '" + tok + "' is not a number");
    v.push_back(d);
  }
  if (v.size() != 12)
    throw DomainError("transform needs 12 numbers, got " + std::to_string(v.size()));
  RigidTransform t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t.rotation[i][j] = v[3 * i + j];
  t.translation = {v[9], v[10], v[11]};
  t.validate();
  return t;
}

void SheetLattice::validate() const {
  if (!intra_sheet_step.is_finite() || intra_sheet_step.length_sq() == 0.0)
    throw DomainError("intra-sheet step must be a nonzero finite vector");
  sheet2_transform.validate();
}

Structure transform_chain(const Structure& st, char chain_id, const RigidTransform& t,
                          char new_id) {
  const Chain* src = st.find_chain(chain_id);
  if (!src)
    throw NotFoundError(std::string("no chain ") + chain_id);
  if (st.find_chain(new_id))
    throw StructureError(std::string("chain ") + new_id + " already exists");
  Chain copy = *src;
  copy.id = new_id;
  for (Residue& r : copy.residues)
    for (Atom& a : r.atoms)
      a.pos = apply_transform(t, a.pos);
  Structure out = st;
  out.chains.push_back(std::move(copy));
  return out;
}

Structure replicate_lattice(const Structure& st, const SheetLattice& lattice,
                            LatticeSources sources) {
  lattice.validate();
  const Chain* src[4] = {st.find_chain(sources.a), st.find_chain(sources.b),
                         st.find_chain(sources.g), st.find_chain(sources.h)};
  const char src_id[4] = {sources.a, sources.b, sources.g, sources.h};
  for (int k = 0; k < 4; ++k)
    if (!src[k])
      throw NotFoundError(std::string("lattice source chain ") + src_id[k] + " missing");
  const Vec3 step = lattice.intra_sheet_step;
  auto shifted = [](const Chain& c, char id, const Vec3& d) {
    Chain out = c;
    out.id = id;
    for (Residue& r : out.residues)
      for (Atom& a : r.atoms)
        a.pos += d;
    return out;
  };
  Structure out;
  out.header = st.header;
  out.chains = {
      shifted(*src[0], 'A', {}),    shifted(*src[1], 'B', {}),
      shifted(*src[0], 'C', step),  shifted(*src[1], 'D', step),
      shifted(*src[0], 'E', -step), shifted(*src[1], 'F', -step),
      shifted(*src[2], 'G', {}),    shifted(*src[3], 'H', {}),
      shifted(*src[2], 'I', step),  shifted(*src[3], 'J', step),
      shifted(*src[2], 'K', -step), shifted(*src[3], 'L', -step),
  };
  return out;
}

Reconciliation reconcile_translation(std::span<const Vec3> initial_free,
                                     std::span<const Vec3> optimized_free,
                                     const RigidTransform& base) {
  if (initial_free.empty() || initial_free.size() != optimized_free.size())
    throw DomainError("reconcile_translation needs two non-empty lists of equal length");
  Vec3 mean;
  for (std::size_t i = 0; i < initial_free.size(); ++i)
    mean += optimized_free[i] - initial_free[i];
  mean = mean / static_cast<double>(initial_free.size());
  double residual = 0.0;
  for (std::size_t i = 0; i < initial_free.size(); ++i)
    residual = std::max(residual, ((optimized_free[i] - initial_free[i]) - mean).length());
  Reconciliation r;
  r.transform = base;
  r.transform.translation += mean;
  r.residual = residual;
  r.mean_displacement = mean;
  return r;
}

} // namespace zipper
