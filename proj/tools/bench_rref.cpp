/*
 * Benchmark: serial vs OpenMP reduced row echelon over the rationals, on
 * random sparse-ish matrices and on a real quotient-space matrix.
 */
#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "legdef/modules.hpp"
#include "legdef/rref.hpp"

using namespace legdef;

namespace {

std::vector<std::vector<Rat>> random_matrix(int rows, int cols, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 12);
    std::uniform_int_distribution<int> hit(0, 3);
    std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols, Rat(0)));
    for (auto& r : m)
        for (auto& q : r)
            if (hit(rng) == 0)
                q = rat(num(rng), den(rng));
    return m;
}

double run(const std::vector<std::vector<Rat>>& m, int cols, RrefMode mode, int reps, int* rank) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        *rank = rref(m, cols, mode).rank;
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    int rows = argc > 1 ? std::atoi(argv[1]) : 200;
    int cols = argc > 2 ? std::atoi(argv[2]) : 160;
    int reps = argc > 3 ? std::atoi(argv[3]) : 2;

#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif

    std::mt19937 rng(20240814);
    auto m = random_matrix(rows, cols, rng);
    int rank_s = 0, rank_p = 0;
    double ts = run(m, cols, RrefMode::serial, reps, &rank_s);
    double tp = run(m, cols, RrefMode::parallel, reps, &rank_p);
    std::printf("random %dx%d: serial %.3fs, parallel %.3fs, speedup %.2fx, rank %d%s\n", rows,
                cols, ts, tp, ts / tp, rank_s, rank_s == rank_p ? "" : "  RANK MISMATCH");

    /* a real workload: the quotient matrix of a deformation module */
    const int T = 200;
    PlaneGerm germ;
    germ.branches.push_back({TruncSeries::monomial(0, T, 5, Rat(1)),
                             TruncSeries::monomial(0, T, 13, Rat(1)) +
                                 TruncSeries::monomial(0, T, 17, rat(3, 7))});
    ModuleInput in = make_module_input(ModulePreset::hat, germ);
    const int n = 96;
    std::vector<VectorJet> gens = denominator_generators(in, n);
    auto floors = numerator_floors(in);
    QuotientSpace q;
    q.trunc = n;
    q.floors = floors;
    for (size_t i = 0; i < floors.size(); ++i)
        for (int slot = 0; slot < 2; ++slot)
            for (int e = slot == 0 ? floors[i].slot1 : floors[i].slot2; e <= n; ++e)
                q.coords.push_back({static_cast<int>(i), slot, e});
    std::sort(q.coords.begin(), q.coords.end());
    for (size_t c = 0; c < q.coords.size(); ++c)
        q.coord_index[q.coords[c]] = static_cast<int>(c);
    std::vector<std::vector<Rat>> rows2;
    for (const auto& g : gens)
        rows2.push_back(q.coordinates(g));
    int rs = 0, rp = 0;
    double ms = run(rows2, static_cast<int>(q.coords.size()), RrefMode::serial, reps, &rs);
    double mp = run(rows2, static_cast<int>(q.coords.size()), RrefMode::parallel, reps, &rp);
    std::printf("module %zux%zu: serial %.3fs, parallel %.3fs, speedup %.2fx, rank %d%s\n",
                rows2.size(), q.coords.size(), ms, mp, ms / mp, rs,
                rs == rp ? "" : "  RANK MISMATCH");
    return rank_s == rank_p && rs == rp ? 0 : 1;
}
