#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "wefkit/bounds.hpp"
#include "wefkit/ensemble.hpp"
#include "wefkit/trellis.hpp"
#include "wefkit/transfer_matrix.hpp"
#include "wefkit/wef.hpp"

namespace wefkit {

/// Ceiling on the default truncation of the three-variable (braided) enumerator.
/// Past this point the band holds tens of millions of big-integer terms and the
/// section recursion stops being interactive; explicit --wmax overrides still apply.
constexpr int kBccDefaultWmaxCap = 160;

/// Default truncation weight: twice the Gilbert-Varshamov distance of the (3N, N)
/// code, at least 60, never beyond the largest possible codeword weight 3N. The
/// braided table is additionally capped (see kBccDefaultWmaxCap); the caller is told
/// via BoundCurve::below_gv_warning when a capped band no longer covers GV.
inline int default_w_max(EnsembleKind kind, int N) {
    const int gv = gv_distance(3 * N, N);
    int w = std::max(2 * gv, 60);
    w = std::min(w, 3 * N);
    if (kind == EnsembleKind::kBcc) w = std::min(w, kBccDefaultWmaxCap);
    return w;
}

/// Terminated-trellis IP-WEF of one component encoder.
inline WefTable component_wef(const GeneratorSpec& gen, int N, int w_max) {
    const auto trellis = build_trellis(gen);
    const auto m = build_transfer_matrix(trellis);
    return terminated_wef(m, N, w_max);
}

/// Ensemble-average enumerator with identical upper and lower component encoders.
inline EnsembleWef build_ensemble(EnsembleKind kind, const GeneratorSpec& gen, int N,
                                  int w_max) {
    const int expected_inputs = kind == EnsembleKind::kPcc ? 1 : 2;
    if (gen.num_inputs() != expected_inputs)
        throw std::invalid_argument(kind == EnsembleKind::kPcc
                                        ? "pcc ensemble needs a rate-1/2 generator"
                                        : "bcc ensemble needs a rate-2/3 generator");
    const WefTable table = component_wef(gen, N, w_max);
    return kind == EnsembleKind::kPcc ? pcc_average(table, table, N)
                                      : bcc_average(table, table, N);
}

struct MinDistEntry {
    int N = 0;
    double alpha = 0.0;
    int d_hat = 0;
    bool lower_bound_only = false;
    int w_max_used = 0;
};

/// Minimum-distance bound d_hat for every (N, alpha) pair. Without an explicit
/// truncation the band is grown (doubling, up to 3N) until the spectrum partial sum
/// crosses 1 - alpha for every alpha, so no d_hat is silently truncation-limited.
inline std::vector<MinDistEntry> min_distance_table(EnsembleKind kind,
                                                    const GeneratorSpec& gen,
                                                    const std::vector<int>& n_list,
                                                    const std::vector<double>& alphas,
                                                    std::optional<int> w_max_override) {
    std::vector<MinDistEntry> out;
    for (int N : n_list) {
        int w = w_max_override ? std::min(*w_max_override, 3 * N) : std::min(32, 3 * N);
        while (true) {
            const EnsembleWef e = build_ensemble(kind, gen, N, w);
            const auto a_w = ensemble_total_weight(e);
            std::vector<MinDistEntry> rows;
            bool flagged = false;
            for (double alpha : alphas) {
                const ExpurgationResult r = min_distance_bound(a_w, alpha, w);
                rows.push_back({N, alpha, r.d_hat, r.lower_bound_only, w});
                flagged = flagged || r.lower_bound_only;
            }
            if (w_max_override || !flagged || w >= 3 * N) {
                out.insert(out.end(), rows.begin(), rows.end());
                break;
            }
            w = std::min(2 * w, 3 * N);
        }
    }
    return out;
}

/// Inclusive dB grid start:stop:step.
inline std::vector<double> make_snr_grid(double start, double stop, double step) {
    if (step <= 0) throw std::invalid_argument("snr grid: step must be > 0");
    if (stop < start) throw std::invalid_argument("snr grid: empty range");
    std::vector<double> grid;
    const int count = static_cast<int>((stop - start) / step + 1e-9) + 1;
    for (int j = 0; j < count; ++j) grid.push_back(start + j * step);
    return grid;
}

}  // namespace wefkit
