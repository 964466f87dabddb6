#include <array>
#include <ostream>

#include "confdiam/error.hpp"
#include "confdiam/gauss.hpp"
#include "confdiam/parallel.hpp"
#include "confdiam/vec3.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <thread>

namespace confdiam {

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::invalid_input: return "invalid_input";
        case Errc::domain_error: return "domain_error";
        case Errc::unsupported: return "unsupported";
        case Errc::parse_error: return "parse_error";
        case Errc::io_error: return "io_error";
        case Errc::nonmanifold_edge: return "nonmanifold_edge";
        case Errc::inconsistent_orientation: return "inconsistent_orientation";
        case Errc::degenerate_face: return "degenerate_face";
        case Errc::isolated_vertex: return "isolated_vertex";
        case Errc::pinched_vertex: return "pinched_vertex";
        case Errc::disconnected: return "disconnected";
        case Errc::mesh_quality: return "mesh_quality";
        case Errc::gate_violation: return "gate_violation";
        case Errc::solver_stalled: return "solver_stalled";
        case Errc::construction_error: return "construction_error";
    }
    return "unknown";
}

namespace {

// Nodes/weights on [0, 1], mapped from the standard [-1, 1] tables.
constexpr std::array<GaussPoint, 1> kG1{{{0.5, 1.0}}};
constexpr std::array<GaussPoint, 2> kG2{{
    {0.5 - 0.28867513459481288225, 0.5},
    {0.5 + 0.28867513459481288225, 0.5},
}};
constexpr std::array<GaussPoint, 3> kG3{{
    {0.5 - 0.38729833462074168852, 0.27777777777777777778},
    {0.5, 0.44444444444444444444},
    {0.5 + 0.38729833462074168852, 0.27777777777777777778},
}};
constexpr std::array<GaussPoint, 4> kG4{{
    {0.5 - 0.43056815579702628761, 0.17392742256872692869},
    {0.5 - 0.16999052179242812785, 0.32607257743127307131},
    {0.5 + 0.16999052179242812785, 0.32607257743127307131},
    {0.5 + 0.43056815579702628761, 0.17392742256872692869},
}};
constexpr std::array<GaussPoint, 5> kG5{{
    {0.5 - 0.45308992296933199640, 0.11846344252809454376},
    {0.5 - 0.26923465505284154552, 0.23931433524968323402},
    {0.5, 0.28444444444444444444},
    {0.5 + 0.26923465505284154552, 0.23931433524968323402},
    {0.5 + 0.45308992296933199640, 0.11846344252809454376},
}};

int g_worker_cap = 0;

}  // namespace

std::span<const GaussPoint> gauss_rule(int order) {
    switch (order) {
        case 1: return kG1;
        case 2: return kG2;
        case 3: return kG3;
        case 4: return kG4;
        case 5: return kG5;
        default:
            fail(Errc::invalid_input,
                 "gauss_rule: order must be in [1, " + std::to_string(kMaxGaussOrder) + "]");
    }
}

int worker_count() {
#ifdef _OPENMP
    if (g_worker_cap > 0) return g_worker_cap;
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_worker_count(int n) {
    g_worker_cap = n > 0 ? n : 0;
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#endif
}

}  // namespace confdiam
