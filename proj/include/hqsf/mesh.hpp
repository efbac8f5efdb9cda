#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hqsf/geometry.hpp"
#include "hqsf/rotation.hpp"

namespace hqsf {

struct GridSpec {
    double u1_lo{}, u1_hi{};
    double u2_lo{}, u2_hi{};
    int nu1{2}, nu2{2};          // >= 2 each, endpoints included
    bool skip_degenerate{true};  // mask epsilon-degenerate vertices
};

// One grid vertex as produced by a pipeline evaluator. `valid` is false when
// evaluation failed outright (singular Gauss map, vanishing Wronskian, ...);
// `degenerate` flags points where the regularity factor P fails the epsilon
// test but position and normal are still well defined.
struct PointSample {
    Vec3 position{};
    Vec3 normal{};
    double regularity{};  // P
    double residual{};    // defining-relation residual at the vertex
    bool valid{};
    bool degenerate{};
};

using SurfaceEvaluator = std::function<PointSample(double u1, double u2)>;

// Row-major nu1 x nu2 vertex grid with quad faces. Masked vertices keep their
// slots (face indices stay stable); faces touching a masked vertex are
// dropped. Per-vertex diagnostics are retained for verification reports.
struct SurfaceMesh {
    int nu1{}, nu2{};
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals;
    std::vector<std::array<int, 4>> faces;
    std::vector<std::uint8_t> masked;
    std::vector<double> regularity;
    std::vector<double> residual;

    std::size_t masked_count() const;
};

// Evaluates the grid (rows in parallel, output independent of scheduling).
// Evaluator exceptions derived from Error mask the vertex.
SurfaceMesh sample_surface(const SurfaceEvaluator& evaluate, const GridSpec& spec);

// Standard evaluators over the two pipelines. Vertices with negligible
// Wronskian or epsilon-degenerate regularity factor are flagged degenerate;
// outright evaluation failures come back invalid.
SurfaceEvaluator make_surface_evaluator(const HQSFData& data);
SurfaceEvaluator make_rotation_evaluator(const RotationSurface& surface);

// ASCII Wavefront OBJ: v/vn/f lines, quads with 1-based `a//a` indices,
// 17 significant digits, LF line endings. Deterministic byte-for-byte.
void export_obj(const SurfaceMesh& mesh, std::ostream& out);
void export_obj(const SurfaceMesh& mesh, const std::string& path);

// CSV of profile samples: header u1,A,B,dA,dB,regular then one row per
// sample in input order, 17 significant digits.
void export_profile_csv(const std::vector<ProfileSample>& samples, std::ostream& out);
void export_profile_csv(const std::vector<ProfileSample>& samples, const std::string& path);

} // namespace hqsf
