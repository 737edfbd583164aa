// Times the grid engine: serial reference vs OpenMP at several worker
// counts, on the figure surfaces (single- and two-qubit pipelines per point).
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "qfit/grid.hpp"

namespace {

double time_once(const std::function<std::string()>& fn, std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n = 41;
    if (argc > 1) n = static_cast<std::size_t>(std::atol(argv[1]));

    qfit::FigureConfig cfg;
    cfg.id = 1;
    cfg.kind = qfit::ChannelKind::Depolarizing;
    cfg.sign = +1;
    cfg.n = n;

    std::cout << "grid " << n << "x" << n << " (" << n * n << " points, single + double pipeline each)\n";

    std::string serial_csv;
    const double t_serial =
        time_once([&] { return qfit::figure_rows_to_csv(qfit::figure_data_serial(cfg)); }, serial_csv);
    std::cout << "serial reference: " << t_serial << " s\n";

    const int max_threads = omp_get_max_threads();
    for (int nt = 1; nt <= max_threads; nt *= 2) {
        cfg.threads = nt;
        std::string csv;
        const double t = time_once([&] { return qfit::figure_rows_to_csv(qfit::figure_data(cfg)); }, csv);
        std::cout << "openmp " << nt << " thread" << (nt > 1 ? "s" : "") << ":  " << t << " s  (speedup "
                  << t_serial / t << ", output " << (csv == serial_csv ? "identical" : "DIFFERS") << ")\n";
        if (csv != serial_csv) return 1;
    }
    return 0;
}
