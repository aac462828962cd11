// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// when any criterion fails. An optional argument names a directory that
// receives the campaign CSVs used by criteria 5 to 7.

#include "dmace/benchmarks.hpp"
#include "dmace/campaign.hpp"
#include "dmace/metrics.hpp"
#include "dmace/receiver.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace dmace;

namespace
{

struct Verdict
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *spec, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, spec, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool monotone_trace(const std::vector<double> &trace)
{
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (trace[i] > trace[i - 1] + 1e-9)
            return false;
    return true;
}

// Nonincreasing in SNR with at most one upward step, itself no larger than
// 0.5 dB. Values are in dB; -inf (an exact zero) is allowed.
struct TrendCheck
{
    int inversions = 0;
    double worst_db = 0.0;
    bool ok() const { return inversions <= 1 && worst_db <= 0.5; }
};

TrendCheck trend(const std::vector<double> &db)
{
    TrendCheck out;
    for (std::size_t i = 1; i < db.size(); ++i)
    {
        const double a = db[i - 1], b = db[i];
        if (std::isinf(a) && a < 0 && std::isinf(b) && b < 0)
            continue;
        if (b > a)
        {
            ++out.inversions;
            out.worst_db = std::max(out.worst_db, b - a);
        }
    }
    return out;
}

std::vector<double> column(const std::vector<MetricRow> &rows, double MetricRow::*field, bool to_decibel = false)
{
    std::vector<double> v;
    for (const auto &r : rows)
        v.push_back(to_decibel ? 10.0 * std::log10(r.*field) : r.*field);
    return v;
}

std::string csv_of(const ExperimentConfig &cfg, const std::vector<MetricRow> &rows)
{
    std::ostringstream os;
    write_csv(os, cfg, rows);
    return os.str();
}

// Drops the mean_runtime_s column (the only wall-clock quantity).
std::string without_runtime(const std::string &csv)
{
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
    {
        if (!line.empty() && line[0] != '#')
        {
            std::vector<std::string> cells;
            std::stringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                cells.push_back(cell);
            if (cells.size() == 8)
                cells.erase(cells.begin() + 5);
            line.clear();
            for (std::size_t i = 0; i < cells.size(); ++i)
                line += (i ? "," : "") + cells[i];
        }
        out << line << '\n';
    }
    return out.str();
}

// Criterion 1 --------------------------------------------------------------

Verdict algebraic_identities()
{
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(20260101);
    std::uniform_int_distribution<int> small(1, 8), dim(1, 12);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        const int N = small(rng), K = dim(rng), T = dim(rng), P = dim(rng);
        const ComplexMatrix H = oracle::random_matrix(K, N, rng), X = oracle::random_matrix(T, N, rng),
                            F = oracle::random_matrix(P, N, rng);
        const Tensor3 Y = parafac_build(H, X, F);
        const ComplexMatrix Y1 = oracle::mode1_by_sum(H, X, F), Y2 = oracle::mode2_by_sum(H, X, F);

        worst = std::max(worst, oracle::rel_err(unfold_mode1(Y), Y1));
        worst = std::max(worst, oracle::rel_err(unfold_mode2(Y), Y2));
        worst = std::max(worst, oracle::rel_err(H * khatri_rao(F, X).transpose(), Y1));
        worst = std::max(worst, oracle::rel_err(X * khatri_rao(F, H).transpose(), Y2));

        const ComplexMatrix KR = khatri_rao(F, H);
        worst = std::max(worst, oracle::rel_err(KR, oracle::kron_columns(F, H)));
        const ComplexMatrix hadamard = (F.transpose() * F.conjugate()).cwiseProduct(H.transpose() * H.conjugate());
        worst = std::max(worst, oracle::rel_err(KR.transpose() * KR.conjugate(), hadamard));
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-12 && t < 5.0,
            fmt("max rel err %.2e (limit 1e-12) over 100 instances, %.2f s (limit 5 s)", worst, t)};
}

// Criterion 2 --------------------------------------------------------------

Verdict noiseless_recovery()
{
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg; // reference dimensions, Lorentzian training
    cfg.noiseless = true;
    cfg.trials = 100;
    cfg.seed = 7;
    int good = 0;
    bool all_monotone = true;
    double worst_h = -std::numeric_limits<double>::infinity(), worst_m = worst_h;
    for (std::uint64_t trial = 0; trial < 100; ++trial)
    {
        const TrialOutcome o = run_trial(cfg, std::numeric_limits<double>::infinity(), 0, trial);
        if (!o.ok)
            continue;
        all_monotone = all_monotone && monotone_trace(o.residual_trace);
        const double h = to_db(o.nmse_H), m = to_db(o.nmse_m);
        worst_h = std::max(worst_h, h);
        worst_m = std::max(worst_m, m);
        if (h <= -80.0 && m <= -80.0 && o.ser == 0.0)
            ++good;
    }
    const double t = seconds_since(t0);
    return {good >= 99 && all_monotone && t < 30.0,
            fmt("%d/100 runs at <= -80 dB with SER 0 (need 99), worst NMSE H %.1f dB m %.1f dB, traces %s, "
                "%.1f s (limit 30 s)",
                good, worst_h, worst_m, all_monotone ? "monotone" : "NOT monotone", t)};
}

// Criterion 3 --------------------------------------------------------------

Verdict closed_form_equivalence()
{
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(303);
    std::uniform_real_distribution<double> snr(0.0, 30.0);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i)
    {
        const auto in = (i % 2 == 0) ? fixture::draw(8, 10, 32, 16, 1000 + i, true)
                                     : fixture::draw_physical(8, 10, 32, 2, 8, 1000 + i, true);
        const auto noisy = add_noise(in.clean, snr(rng), rng);
        const ComplexMatrix Y1 = unfold_mode1(noisy.Y), Y2 = unfold_mode2(noisy.Y);
        const ComplexMatrix &F = in.F.F;

        const ComplexMatrix H_cf =
            semi_unitary_H(Y1, F, in.X, inverse_squared_moduli(in.m.m), in.s.s.squaredNorm());
        const ComplexMatrix H_ls = Y1 * pinv(khatri_rao(F, in.X)).transpose();
        worst = std::max(worst, oracle::rel_err(H_cf, H_ls));

        // The X update holds for any channel matrix, not only the true one.
        const ComplexMatrix H_any = (i % 3 == 0) ? oracle::random_matrix(8, 16, rng) : in.H.H;
        const ComplexMatrix X_cf = semi_unitary_X(Y2, F, H_any, inverse_column_energies(H_any));
        const ComplexMatrix X_ls = Y2 * pinv(khatri_rao(F, H_any)).transpose();
        worst = std::max(worst, oracle::rel_err(X_cf, X_ls));
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-10 && t < 10.0,
            fmt("max rel err %.2e (limit 1e-10) over 100 noisy instances, %.2f s (limit 10 s)", worst, t)};
}

// Criterion 4 --------------------------------------------------------------

Verdict pilot_exactness()
{
    double worst_h = 0.0, worst_m = 0.0, worst_mf = 0.0;
    Rng rng(404);
    for (std::uint64_t i = 0; i < 50; ++i)
    {
        const auto in = fixture::draw(8, 10, 32, 16, 2000 + i, true, true);
        const auto rep = pilot_aided_benchmark(in.clean, in.F, in.s.s, in.m.m);
        worst_h = std::max(worst_h, oracle::rel_err(rep.H_hat, in.H.H));
        worst_m = std::max(worst_m, oracle::rel_err(rep.m_hat, in.m.m));

        // Matched-filter identity, noiseless and noisy.
        for (bool noisy : {false, true})
        {
            const ReceivedTensor Y = noisy ? add_noise(in.clean, 10.0, rng) : in.clean;
            const ComplexMatrix Y2 = unfold_mode2(Y.Y);
            const RealVector h_tilde = inverse_column_energies(in.H.H);
            const ComplexVector direct = pilot_aided_m(Y2, in.F.F, in.H.H, h_tilde, in.s.s);
            const ComplexMatrix X_hat = semi_unitary_X(Y2, in.F.F, in.H.H, h_tilde);
            const ComplexVector filtered = X_hat.transpose() * in.s.s.conjugate() / 10.0;
            worst_mf = std::max(worst_mf, oracle::rel_err(direct, filtered));
        }
    }
    const bool pass = worst_h <= 1e-10 && worst_m <= 1e-10 && worst_mf <= 1e-10;
    return {pass, fmt("max rel err H %.2e, m %.2e, matched filter %.2e (limit 1e-10) over 50 instances", worst_h,
                      worst_m, worst_mf)};
}

// Criteria 5 to 7 share the desk-scale campaigns ---------------------------

struct Campaigns
{
    ExperimentConfig proposed_cfg, bench_cfg, untimed_cfg;
    CampaignResult proposed, bench;
    std::string untimed_1, untimed_4;
    double seconds_5 = 0.0;
};

ExperimentConfig desk_config(ReceiverKind receiver)
{
    ExperimentConfig cfg;
    cfg.trials = 200;
    cfg.snr_grid_db = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    cfg.qam_order = 64;
    cfg.seed = 1;
    cfg.receiver = receiver;
    cfg.training = receiver == ReceiverKind::proposed ? TrainingKind::lorentzian : TrainingKind::semi_unitary_dft;
    return cfg;
}

Campaigns run_campaigns(const std::filesystem::path &out_dir)
{
    Campaigns c;
    c.proposed_cfg = desk_config(ReceiverKind::proposed);
    c.bench_cfg = desk_config(ReceiverKind::bench_data_aided);

    const auto t0 = std::chrono::steady_clock::now();
    c.proposed = run_campaign(c.proposed_cfg, 4);
    c.bench = run_campaign(c.bench_cfg, 1);
    c.seconds_5 = seconds_since(t0);

    c.untimed_cfg = c.proposed_cfg;
    c.untimed_cfg.record_runtime = false;
    c.untimed_1 = csv_of(c.untimed_cfg, run_campaign(c.untimed_cfg, 1).rows);
    c.untimed_4 = csv_of(c.untimed_cfg, run_campaign(c.untimed_cfg, 4).rows);

    if (!out_dir.empty())
    {
        std::filesystem::create_directories(out_dir);
        std::ofstream(out_dir / "proposed.csv") << csv_of(c.proposed_cfg, c.proposed.rows);
        std::ofstream(out_dir / "bench_data_aided.csv") << csv_of(c.bench_cfg, c.bench.rows);
        std::ofstream(out_dir / "proposed_untimed_threads1.csv") << c.untimed_1;
        std::ofstream(out_dir / "proposed_untimed_threads4.csv") << c.untimed_4;
    }
    return c;
}

void print_table(const char *label, const std::vector<MetricRow> &rows)
{
    std::printf("  %s\n  %6s %10s %10s %10s %8s %12s %7s\n", label, "snr", "nmse_H", "nmse_m", "ser", "iters",
                "runtime_s", "failed");
    for (const auto &r : rows)
        std::printf("  %6.1f %10.2f %10.2f %10.3e %8.2f %12.3e %7zu\n", r.snr_db, r.nmse_H_db, r.nmse_m_db, r.ser,
                    r.mean_iters, r.mean_runtime_s, r.failed);
}

std::size_t row_at(const std::vector<MetricRow> &rows, double snr)
{
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].snr_db == snr)
            return i;
    return rows.size();
}

Verdict curve_checks(const Campaigns &c)
{
    const auto &p = c.proposed.rows, &b = c.bench.rows;
    bool ok = p.size() == 7 && b.size() == 7;
    std::string detail;

    // (a) both channel components close at every SNR.
    double worst_gap = 0.0, worst_snr = 0.0;
    for (const auto &r : p)
    {
        const double gap = std::abs(r.nmse_H_db - r.nmse_m_db);
        if (gap > worst_gap)
        {
            worst_gap = gap;
            worst_snr = r.snr_db;
        }
    }
    const bool a = worst_gap <= 2.0;
    detail += fmt("(a) %s max |NMSE_H - NMSE_m| %.2f dB at %.0f dB (limit 2 dB); ", a ? "ok" : "FAIL", worst_gap,
                  worst_snr);

    // (b) benchmark gain at mid-SNR for both components.
    const std::size_t ip = row_at(p, 15.0), ib = row_at(b, 15.0);
    bool bb = false;
    if (ip < p.size() && ib < b.size())
    {
        const double gh = p[ip].nmse_H_db - b[ib].nmse_H_db, gm = p[ip].nmse_m_db - b[ib].nmse_m_db;
        bb = std::abs(gh - 5.0) <= 2.0 && std::abs(gm - 5.0) <= 2.0;
        detail += fmt("(b) %s gap at 15 dB H %.2f dB, m %.2f dB (target 5 +/- 2); ", bb ? "ok" : "FAIL", gh, gm);
    }

    // (c) monotone trends for both receivers.
    bool cc = true;
    int inversions = 0;
    double worst_inv = 0.0;
    for (const auto *rows : {&p, &b})
        for (const auto &series : {column(*rows, &MetricRow::nmse_H_db), column(*rows, &MetricRow::nmse_m_db),
                                   column(*rows, &MetricRow::ser, true)})
        {
            const TrendCheck tc = trend(series);
            cc = cc && tc.ok();
            inversions += tc.inversions;
            worst_inv = std::max(worst_inv, tc.worst_db);
        }
    detail += fmt("(c) %s %d inversions, largest %.2f dB; ", cc ? "ok" : "FAIL", inversions, worst_inv);

    std::size_t failed = 0;
    for (const auto *rows : {&p, &b})
        for (const auto &r : *rows)
            failed += r.failed;
    const bool fast = c.seconds_5 < 600.0;
    detail += fmt("%zu failed trials, %.1f s (limit 600 s)", failed, c.seconds_5);
    ok = ok && a && bb && cc && fast && failed == 0;
    return {ok, detail};
}

Verdict iteration_checks(const Campaigns &c)
{
    const auto &p = c.proposed.rows;
    const std::size_t i0 = row_at(p, 0.0);
    if (i0 == p.size())
        return {false, "no 0 dB row"};
    const double limit = 0.25 * p[i0].mean_iters;
    double worst = 0.0;
    bool emitted = true;
    for (const auto &r : p)
    {
        emitted = emitted && std::isfinite(r.mean_iters) && r.mean_iters >= 1.0 && r.mean_runtime_s > 0.0;
        if (r.snr_db >= 15.0)
            worst = std::max(worst, r.mean_iters);
    }
    return {worst <= limit && emitted,
            fmt("worst mean iterations at >= 15 dB %.2f vs limit %.2f (25%% of %.2f at 0 dB); iterations and "
                "runtimes %s for all %zu SNR points",
                worst, limit, p[i0].mean_iters, emitted ? "emitted" : "MISSING", p.size())};
}

Verdict determinism(const Campaigns &c)
{
    const bool identical = c.untimed_1 == c.untimed_4 && !c.untimed_1.empty();
    // The timed campaign ran at 4 threads; everything but wall-clock agrees.
    const bool timed_match = without_runtime(csv_of(c.proposed_cfg, c.proposed.rows)) == without_runtime(c.untimed_1);
    return {identical && timed_match,
            fmt("untimed CSV at 1 vs 4 threads %s (%zu bytes); timed run matches outside the runtime column: %s",
                identical ? "byte-identical" : "DIFFERS", c.untimed_1.size(), timed_match ? "yes" : "NO")};
}

// Criterion 8 --------------------------------------------------------------

Verdict preflight()
{
    const auto r = identifiability_preflight(8, 10, 32, 16);
    const bool pass = !r.kruskal_ok && r.relaxed_ok && r.p_ge_n && r.relaxed_lhs == 1260 && r.relaxed_rhs == 120;
    return {pass, fmt("kruskal_ok=%s (%lld vs %lld), relaxed_ok=%s (%lld vs %lld), p_ge_n=%s",
                      r.kruskal_ok ? "true" : "false", r.kruskal_lhs, r.kruskal_rhs, r.relaxed_ok ? "true" : "false",
                      r.relaxed_lhs, r.relaxed_rhs, r.p_ge_n ? "true" : "false")};
}

} // namespace

int main(int argc, char **argv)
{
    const std::filesystem::path out_dir = argc > 1 ? argv[1] : "";
    int failures = 0;
    auto report = [&](int id, const char *name, const Verdict &v) {
        std::printf("%s  %d  %-28s %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    };
    auto guarded = [](const std::function<Verdict()> &fn) {
        try
        {
            return fn();
        }
        catch (const std::exception &e)
        {
            return Verdict{false, std::string("exception: ") + e.what()};
        }
    };

    report(1, "algebraic identities", guarded(algebraic_identities));
    report(2, "noiseless exact recovery", guarded(noiseless_recovery));
    report(3, "closed-form equivalence", guarded(closed_form_equivalence));
    report(4, "pilot-aided exactness", guarded(pilot_exactness));

    Campaigns c;
    std::string campaign_error;
    try
    {
        c = run_campaigns(out_dir);
    }
    catch (const std::exception &e)
    {
        campaign_error = e.what();
    }
    if (campaign_error.empty())
    {
        report(5, "NMSE/SER curves (200 trials)", guarded([&] { return curve_checks(c); }));
        report(6, "iterations vs SNR", guarded([&] { return iteration_checks(c); }));
        report(7, "determinism", guarded([&] { return determinism(c); }));
    }
    else
    {
        for (int id : {5, 6, 7})
            report(id, "campaign", Verdict{false, "campaign failed: " + campaign_error});
    }
    report(8, "identifiability preflight", guarded(preflight));

    if (campaign_error.empty())
    {
        std::printf("\n");
        print_table("proposed receiver, Lorentzian training", c.proposed.rows);
        print_table("data-aided benchmark, DFT training", c.bench.rows);
    }
    std::printf("\n%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
