#pragma once
// Grid sampling of a director field and its CSV / JSON export.

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "disclination/ansatz.hpp"
#include "disclination/errors.hpp"
#include "disclination/linalg.hpp"
#include "disclination/nfield.hpp"

namespace disclination {

inline constexpr const char* kFormatVersion = "1.0.0";
inline constexpr const char* kCsvHeader = "x1,x2,x3,n1,n2,n3,curv_residual,proj_len";
inline constexpr double kRecordNormTol = 1e-10;

enum class Section { PlaneX2Zero, PlaneX3Zero, Volume };

inline const char* to_string(Section s) {
  switch (s) {
    case Section::PlaneX2Zero: return "x2zero";
    case Section::PlaneX3Zero: return "x3zero";
    case Section::Volume: return "volume";
  }
  return "?";
}

inline const char* to_string(DirectorField::Construction c) {
  return c == DirectorField::Construction::Hedgehog ? "hedgehog" : "sphersym";
}

struct SampleGridSpec {
  Section section = Section::PlaneX2Zero;
  double extent = 3.0;       // half-width
  int resolution = 21;       // points per axis
  double exclusion_radius = 0.05;

  void validate() const {
    if (resolution < 2) throw PreconditionError("grid resolution must be at least 2");
    if (!(extent > 0.0) || !std::isfinite(extent))
      throw PreconditionError("grid extent must be positive");
    if (!(exclusion_radius >= kDefaultRMin))
      throw PreconditionError("exclusion radius must be at least r_min");
  }

  double coordinate(int i) const {
    return -extent + 2.0 * extent * static_cast<double>(i) / static_cast<double>(resolution - 1);
  }
};

struct FieldSample {
  Vec3 x;
  Vec3 n;
  double curv_residual = 0.0;
  /// Length of the projection of n onto the sampled plane; 1 for volumes.
  double proj_len = 1.0;
};

struct FieldSampleSet {
  std::vector<FieldSample> records;
};

inline double projection_length(Section s, const Vec3& n) {
  switch (s) {
    case Section::PlaneX2Zero: return std::hypot(n[0], n[2]);
    case Section::PlaneX3Zero: return std::hypot(n[0], n[1]);
    case Section::Volume: return norm(n);
  }
  return norm(n);
}

/// Row-major grid points: the first listed axis varies slowest. Plane x2 = 0
/// iterates (x1, x3), plane x3 = 0 iterates (x1, x2), volume (x1, x2, x3).
/// Points inside the exclusion ball, or where the field is undefined, are
/// skipped.
inline FieldSampleSet sample_field(const DirectorField& field, const SampleGridSpec& grid) {
  grid.validate();
  const FlatProfiles flat = theorem_solution(field.profile(), SignBranch::Upper);
  FieldSampleSet out;
  auto add = [&](const Vec3& x) {
    if (norm(x) < grid.exclusion_radius || !field.defined_at(x)) return;
    FieldSample rec;
    rec.x = x;
    rec.n = field(x);
    rec.curv_residual = eval_curvature_K_form(flat.K, flat.V, flat.U, x).max_abs();
    rec.proj_len = projection_length(grid.section, rec.n);
    if (std::fabs(norm(rec.n) - 1.0) > kRecordNormTol)
      throw std::runtime_error("sampled director violates |n| = 1 at grid point");
    out.records.push_back(rec);
  };
  const int n = grid.resolution;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = grid.coordinate(i), b = grid.coordinate(j);
      switch (grid.section) {
        case Section::PlaneX2Zero: add({a, 0.0, b}); break;
        case Section::PlaneX3Zero: add({a, b, 0.0}); break;
        case Section::Volume:
          for (int k = 0; k < n; ++k) add({a, b, grid.coordinate(k)});
          break;
      }
    }
  return out;
}

/// 17 significant digits, '.' separator, independent of the C locale.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& os, const FieldSampleSet& set) {
  os << kCsvHeader << '\n';
  for (const auto& r : set.records) {
    os << format_double(r.x[0]) << ',' << format_double(r.x[1]) << ',' << format_double(r.x[2])
       << ',' << format_double(r.n[0]) << ',' << format_double(r.n[1]) << ','
       << format_double(r.n[2]) << ',' << format_double(r.curv_residual) << ','
       << format_double(r.proj_len) << '\n';
  }
}

inline nlohmann::json grid_to_json(const SampleGridSpec& g) {
  return {{"section", to_string(g.section)},
          {"extent", g.extent},
          {"resolution", g.resolution},
          {"exclusion", g.exclusion_radius}};
}

inline nlohmann::json samples_to_json(const FieldSampleSet& set, nlohmann::json metadata) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : set.records) {
    records.push_back({{"x1", r.x[0]},
                       {"x2", r.x[1]},
                       {"x3", r.x[2]},
                       {"n1", r.n[0]},
                       {"n2", r.n[1]},
                       {"n3", r.n[2]},
                       {"curv_residual", r.curv_residual},
                       {"proj_len", r.proj_len}});
  }
  return {{"metadata", std::move(metadata)}, {"records", std::move(records)}};
}

}  // namespace disclination
