#include "hqsf/mesh.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <limits>
#include <thread>

namespace hqsf {

std::size_t SurfaceMesh::masked_count() const {
    std::size_t count = 0;
    for (std::uint8_t m : masked) count += m;
    return count;
}

SurfaceMesh sample_surface(const SurfaceEvaluator& evaluate, const GridSpec& spec) {
    if (spec.nu1 < 2 || spec.nu2 < 2)
        throw Error("grid needs at least 2 samples per axis");
    if (!(spec.u1_lo < spec.u1_hi) || !(spec.u2_lo < spec.u2_hi))
        throw Error("grid ranges must satisfy lo < hi");

    SurfaceMesh mesh;
    mesh.nu1 = spec.nu1;
    mesh.nu2 = spec.nu2;
    std::size_t count = static_cast<std::size_t>(spec.nu1) * spec.nu2;
    mesh.vertices.resize(count);
    mesh.normals.resize(count);
    mesh.masked.resize(count, 0);
    mesh.regularity.resize(count, 0.0);
    mesh.residual.resize(count, 0.0);

    double step1 = (spec.u1_hi - spec.u1_lo) / (spec.nu1 - 1);
    double step2 = (spec.u2_hi - spec.u2_lo) / (spec.nu2 - 1);

    auto sample_row = [&](int i1) {
        double u1 = spec.u1_lo + i1 * step1;
        for (int i2 = 0; i2 < spec.nu2; ++i2) {
            double u2 = spec.u2_lo + i2 * step2;
            std::size_t at = static_cast<std::size_t>(i1) * spec.nu2 + i2;
            PointSample p;
            try {
                p = evaluate(u1, u2);
            } catch (const Error&) {
                p.valid = false;
            }
            bool ok = p.valid && std::isfinite(p.position.x) &&
                      std::isfinite(p.position.y) && std::isfinite(p.position.z);
            mesh.vertices[at] = ok ? p.position : Vec3{};
            mesh.normals[at] = ok ? p.normal : Vec3{};
            mesh.regularity[at] = p.regularity;
            mesh.residual[at] = p.residual;
            mesh.masked[at] = !ok || (spec.skip_degenerate && p.degenerate);
        }
    };

    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                          static_cast<unsigned>(spec.nu1));
    if (workers <= 1) {
        for (int i1 = 0; i1 < spec.nu1; ++i1) sample_row(i1);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i1 = next.fetch_add(1); i1 < spec.nu1; i1 = next.fetch_add(1))
                    sample_row(i1);
            });
        for (std::thread& t : pool) t.join();
    }

    for (int i1 = 0; i1 + 1 < spec.nu1; ++i1) {
        for (int i2 = 0; i2 + 1 < spec.nu2; ++i2) {
            int a = i1 * spec.nu2 + i2;
            int b = i1 * spec.nu2 + i2 + 1;
            int c = (i1 + 1) * spec.nu2 + i2 + 1;
            int d = (i1 + 1) * spec.nu2 + i2;
            if (mesh.masked[a] || mesh.masked[b] || mesh.masked[c] || mesh.masked[d])
                continue;
            mesh.faces.push_back({a, b, c, d});
        }
    }
    return mesh;
}

namespace {

PointSample evaluate_at(const HQSFData& data, Complex z) {
    PointSample p;
    ComplexJet g = data.g().jet(z);
    if (std::abs(g.d1) == 0.0) return p; // invalid
    ScalarJet2 h = hqsf::scalar_field_jet(data.f1().jet(z), data.f2().jet(z), g,
                                          data.c());
    IntermediateForms forms = intermediate_forms(g, h);
    p.position = immersion(g, h);
    p.normal = gauss_map(g);
    p.regularity = forms.P;
    p.degenerate = is_degenerate(forms) || data.wronskian_negligible(z);
    p.valid = true;
    p.residual = p.degenerate ? std::numeric_limits<double>::quiet_NaN()
                              : defining_residual(data, z);
    return p;
}

} // namespace

SurfaceEvaluator make_surface_evaluator(const HQSFData& data) {
    return [data](double u1, double u2) { return evaluate_at(data, {u1, u2}); };
}

SurfaceEvaluator make_rotation_evaluator(const RotationSurface& surface) {
    HQSFData data = surface.hqsf_data();
    return [data](double u1, double u2) { return evaluate_at(data, {u1, u2}); };
}

namespace {

void append_triple(std::string& out, const char* tag, const Vec3& v) {
    char line[96];
    std::snprintf(line, sizeof(line), "%s %.17g %.17g %.17g\n", tag, v.x, v.y, v.z);
    out += line;
}

} // namespace

void export_obj(const SurfaceMesh& mesh, std::ostream& out) {
    std::string buffer;
    buffer.reserve(mesh.vertices.size() * 80 + mesh.faces.size() * 40);
    for (const Vec3& v : mesh.vertices) append_triple(buffer, "v", v);
    for (const Vec3& n : mesh.normals) append_triple(buffer, "vn", n);
    for (const auto& f : mesh.faces) {
        char line[128];
        std::snprintf(line, sizeof(line), "f %d//%d %d//%d %d//%d %d//%d\n",
                      f[0] + 1, f[0] + 1, f[1] + 1, f[1] + 1,
                      f[2] + 1, f[2] + 1, f[3] + 1, f[3] + 1);
        buffer += line;
    }
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (!out)
        throw IoError("failed writing OBJ stream");
}

void export_obj(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    export_obj(mesh, out);
}

void export_profile_csv(const std::vector<ProfileSample>& samples, std::ostream& out) {
    std::string buffer = "u1,A,B,dA,dB,regular\n";
    for (const ProfileSample& s : samples) {
        char line[200];
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      s.u1, s.A, s.B, s.dA, s.dB, s.regular() ? 1 : 0);
        buffer += line;
    }
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (!out)
        throw IoError("failed writing CSV stream");
}

void export_profile_csv(const std::vector<ProfileSample>& samples, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    export_profile_csv(samples, out);
}

} // namespace hqsf
