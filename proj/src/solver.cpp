#include "segreg/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "segreg/pointwise.hpp"

namespace segreg {

namespace {

// Closed-form update tables: every catalog dynamics kind reduces to
//   s* = max((A - fq[node]) * inv_denom, 0)
// with fq = (s-independent part of f) * h^2/4 and inv_denom = 1/(1 + lambda h^2/4).
struct CompPlan {
    std::vector<double> fq;
    double inv_denom = 1.0;
};

std::vector<CompPlan> build_plans(const ProblemSpec& p, const UniformGrid& g) {
    const double q = g.h * g.h * 0.25;
    std::vector<CompPlan> plans(p.m);
    for (int l = 0; l < p.m; ++l) {
        CompPlan& pl = plans[l];
        pl.fq.assign(g.node_count(), 0.0);
        const DynamicsSpec& d = p.dynamics[l];
        if (d.kind() != DynamicsKind::Zero) {
            for (int j = 1; j <= g.n - 1; ++j)
                for (int i = 1; i <= g.n - 1; ++i)
                    pl.fq[g.index(i, j)] = d.spatial_value(g.x(i), g.y(j)) * q;
        }
        if (d.kind() == DynamicsKind::AffineInS)
            pl.inv_denom = 1.0 / (1.0 + d.lambda() * q);
    }
    return plans;
}

struct SweepStats {
    double max_change = 0.0;
    double max_value = 0.0;
    bool bad = false; // non-finite value produced

    void merge(const SweepStats& o) {
        max_change = std::max(max_change, o.max_change);
        max_value = std::max(max_value, o.max_value);
        bad = bad || o.bad;
    }
};

// Runs fn(lane) on `lanes` lanes; the caller is lane 0. Threads persist
// across run() calls so per-sweep dispatch stays cheap.
class Pool {
public:
    explicit Pool(int lanes) : lanes_(std::max(1, lanes)) {
        for (int lane = 1; lane < lanes_; ++lane)
            threads_.emplace_back([this, lane] { worker_loop(lane); });
    }

    ~Pool() {
        {
            std::lock_guard<std::mutex> lk(mu_);
            stop_ = true;
        }
        cv_start_.notify_all();
        for (auto& t : threads_)
            t.join();
    }

    int lanes() const { return lanes_; }

    void run(const std::function<void(int)>& fn) {
        if (lanes_ == 1) {
            fn(0);
            return;
        }
        {
            std::lock_guard<std::mutex> lk(mu_);
            job_ = &fn;
            done_ = 0;
            ++generation_;
        }
        cv_start_.notify_all();
        fn(0);
        std::unique_lock<std::mutex> lk(mu_);
        cv_done_.wait(lk, [&] { return done_ == lanes_ - 1; });
        job_ = nullptr;
    }

private:
    void worker_loop(int lane) {
        std::uint64_t seen = 0;
        for (;;) {
            const std::function<void(int)>* job = nullptr;
            {
                std::unique_lock<std::mutex> lk(mu_);
                cv_start_.wait(lk, [&] { return stop_ || generation_ != seen; });
                if (stop_)
                    return;
                seen = generation_;
                job = job_;
            }
            (*job)(lane);
            {
                std::lock_guard<std::mutex> lk(mu_);
                ++done_;
            }
            cv_done_.notify_one();
        }
    }

    int lanes_;
    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable cv_start_, cv_done_;
    const std::function<void(int)>* job_ = nullptr;
    std::uint64_t generation_ = 0;
    int done_ = 0;
    bool stop_ = false;
};

// [row_begin, row_end) of interior rows for one lane.
std::pair<int, int> lane_rows(int n, int lanes, int lane) {
    const int rows = n - 1;
    const int lo = 1 + static_cast<int>(static_cast<std::int64_t>(rows) * lane / lanes);
    const int hi = 1 + static_cast<int>(static_cast<std::int64_t>(rows) * (lane + 1) / lanes);
    return {lo, hi};
}

class Sweeper {
public:
    Sweeper(MultiField& state, const ProblemSpec& p, Strategy strategy, int workers)
        : state_(state), grid_(state.grid), plans_(build_plans(p, grid_)),
          strategy_(strategy),
          pool_(strategy == Strategy::GaussSeidel ? 1 : std::max(1, workers)) {
        if (strategy_ == Strategy::Jacobi) {
            scratch_.resize(state_.m());
            for (auto& s : scratch_)
                s.assign(grid_.node_count(), 0.0);
        }
        avg_.resize(pool_.lanes());
        for (auto& a : avg_)
            a.resize(state_.m());
    }

    SweepStats sweep_once() {
        switch (strategy_) {
        case Strategy::GaussSeidel:
            return gauss_seidel();
        case Strategy::Jacobi:
            return jacobi();
        case Strategy::RedBlack:
            return red_black();
        }
        return {};
    }

private:
    // Updates every component at flat node c, writing through `write`,
    // reading neighbor values through `read`. Neighbor averages are shared
    // across components; the drive term is A_l = 2 avg_l - sum_p avg_p.
    template <typename Read, typename Write>
    void update_node(std::size_t c, const Read& read, const Write& write,
                     std::vector<double>& avg, SweepStats& st) {
        const std::size_t stride = static_cast<std::size_t>(grid_.n + 1);
        const int m = state_.m();
        double total = 0.0;
        for (int p = 0; p < m; ++p) {
            const double* v = read(p);
            const double a = (v[c - 1] + v[c + 1] + v[c - stride] + v[c + stride]) * 0.25;
            avg[p] = a;
            total += a;
        }
        for (int l = 0; l < m; ++l) {
            const double A = 2.0 * avg[l] - total;
            const double s = std::max((A - plans_[l].fq[c]) * plans_[l].inv_denom, 0.0);
            if (!std::isfinite(s))
                st.bad = true;
            const double old = read(l)[c];
            write(l, c, s);
            st.max_change = std::max(st.max_change, std::abs(s - old));
            st.max_value = std::max(st.max_value, s);
        }
    }

    SweepStats gauss_seidel() {
        SweepStats st;
        auto& avg = avg_[0];
        const auto read = [&](int p) { return state_.comp[p].values.data(); };
        const auto write = [&](int l, std::size_t c, double s) {
            state_.comp[l].values[c] = s;
        };
        for (int j = 1; j <= grid_.n - 1; ++j) {
            std::size_t c = grid_.index(1, j);
            for (int i = 1; i <= grid_.n - 1; ++i, ++c)
                update_node(c, read, write, avg, st);
        }
        return st;
    }

    SweepStats jacobi() {
        std::vector<SweepStats> lane_stats(pool_.lanes());
        pool_.run([&](int lane) {
            SweepStats st;
            auto& avg = avg_[lane];
            const auto read = [&](int p) { return state_.comp[p].values.data(); };
            const auto write = [&](int l, std::size_t c, double s) { scratch_[l][c] = s; };
            const auto [jlo, jhi] = lane_rows(grid_.n, pool_.lanes(), lane);
            for (int j = jlo; j < jhi; ++j) {
                std::size_t c = grid_.index(1, j);
                for (int i = 1; i <= grid_.n - 1; ++i, ++c)
                    update_node(c, read, write, avg, st);
            }
            lane_stats[lane] = st;
        });
        SweepStats st;
        for (const auto& ls : lane_stats)
            st.merge(ls);
        // Publish the simultaneous update.
        for (int l = 0; l < state_.m(); ++l) {
            auto& v = state_.comp[l].values;
            for (int j = 1; j <= grid_.n - 1; ++j) {
                std::size_t c = grid_.index(1, j);
                for (int i = 1; i <= grid_.n - 1; ++i, ++c)
                    v[c] = scratch_[l][c];
            }
        }
        return st;
    }

    SweepStats red_black() {
        SweepStats st;
        for (int color = 0; color < 2; ++color) {
            std::vector<SweepStats> lane_stats(pool_.lanes());
            pool_.run([&, color](int lane) {
                SweepStats ls;
                auto& avg = avg_[lane];
                const auto read = [&](int p) { return state_.comp[p].values.data(); };
                const auto write = [&](int l, std::size_t c, double s) {
                    state_.comp[l].values[c] = s;
                };
                const auto [jlo, jhi] = lane_rows(grid_.n, pool_.lanes(), lane);
                for (int j = jlo; j < jhi; ++j) {
                    const int i0 = 1 + ((j + 1 + color) & 1);
                    std::size_t c = grid_.index(i0, j);
                    for (int i = i0; i <= grid_.n - 1; i += 2, c += 2)
                        update_node(c, read, write, avg, ls);
                }
                lane_stats[lane] = ls;
            });
            for (const auto& ls : lane_stats)
                st.merge(ls);
        }
        return st;
    }

    MultiField& state_;
    const UniformGrid& grid_;
    std::vector<CompPlan> plans_;
    Strategy strategy_;
    Pool pool_;
    std::vector<std::vector<double>> scratch_;
    std::vector<std::vector<double>> avg_; // per-lane component averages
};

} // namespace

MultiField init_state(const ProblemSpec& p, const UniformGrid& g) {
    MultiField s;
    s.grid = g;
    s.comp.reserve(p.m);
    for (int l = 0; l < p.m; ++l) {
        ScalarField f(g, 0.0);
        for (int i = 0; i <= g.n; ++i) {
            f.at(i, 0) = p.boundary.eval(l, g, i, 0);
            f.at(i, g.n) = p.boundary.eval(l, g, i, g.n);
        }
        for (int j = 1; j <= g.n - 1; ++j) {
            f.at(0, j) = p.boundary.eval(l, g, 0, j);
            f.at(g.n, j) = p.boundary.eval(l, g, g.n, j);
        }
        s.comp.push_back(std::move(f));
    }
    return s;
}

double sweep(MultiField& state, const ProblemSpec& p, Strategy strategy, int workers) {
    Sweeper sw(state, p, strategy, workers);
    const SweepStats st = sw.sweep_once();
    if (st.bad)
        fail(ErrorKind::Numerical, "numerical breakdown: non-finite value during sweep");
    return st.max_change;
}

std::pair<MultiField, SolveReport> solve(const ProblemSpec& p, const UniformGrid& g,
                                         const SolverConfig& cfg) {
    if (!(cfg.tol > 0.0))
        fail(ErrorKind::InvalidArgument, "stopping tolerance must be positive");
    const long max_iters =
        cfg.max_iters > 0 ? cfg.max_iters
                          : 200L * static_cast<long>(g.n) * static_cast<long>(g.n);
    const int stride = std::max(1, cfg.log_every);

    const auto t0 = std::chrono::steady_clock::now();
    MultiField state = init_state(p, g);
    Sweeper sw(state, p, cfg.strategy, cfg.workers);

    SolveReport rep;
    rep.reason = StopReason::MaxIters;

    // Distance-to-fixed-point certificate: with contraction ratio rho
    // estimated from successive update norms, the remaining distance is at
    // most max_change * rho / (1 - rho). Converge when that is <= tol/4 so
    // the iterate, not just the update, sits within tol of the fixed point.
    constexpr int kRatioWindow = 3;
    double ratios[kRatioWindow] = {1.0, 1.0, 1.0};
    int ratio_count = 0;
    double prev_change = -1.0;
    int floor_hits = 0;

    for (long k = 1; k <= max_iters; ++k) {
        const SweepStats st = sw.sweep_once();
        if (st.bad)
            fail(ErrorKind::Numerical, "numerical breakdown: non-finite value during sweep");

        rep.iterations = k;
        rep.final_change = st.max_change;
        if (k % stride == 0)
            rep.history.emplace_back(k, st.max_change);

        if (prev_change > 0.0)
            ratios[++ratio_count % kRatioWindow] = st.max_change / prev_change;
        prev_change = st.max_change;

        bool converged = false;
        if (st.max_change == 0.0) {
            converged = true;
        } else if (st.max_change <= cfg.tol) {
            double rho = 0.0;
            for (double r : ratios)
                rho = std::max(rho, r);
            if (ratio_count >= kRatioWindow && rho < 1.0 &&
                st.max_change * (rho / (1.0 - rho)) <= 0.25 * cfg.tol)
                converged = true;

            // Update floor: changes at rounding scale for several sweeps
            // mean the iteration is stationary in floating point.
            const double floor =
                16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, st.max_value);
            floor_hits = st.max_change <= floor ? floor_hits + 1 : 0;
            if (floor_hits >= 3)
                converged = true;
        }

        if (converged) {
            rep.reason = StopReason::Converged;
            if (rep.history.empty() || rep.history.back().first != k)
                rep.history.emplace_back(k, st.max_change);
            break;
        }
    }

    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(state), std::move(rep)};
}

double scheme_residual(const MultiField& state, const ProblemSpec& p) {
    const UniformGrid& g = state.grid;
    const double q = g.h * g.h * 0.25;
    const std::size_t stride = static_cast<std::size_t>(g.n + 1);
    const int m = state.m();
    std::vector<double> avg(m);
    double res = 0.0;
    for (int j = 1; j <= g.n - 1; ++j) {
        for (int i = 1; i <= g.n - 1; ++i) {
            const std::size_t c = g.index(i, j);
            double total = 0.0;
            for (int l = 0; l < m; ++l) {
                const double* v = state.comp[l].values.data();
                avg[l] = (v[c - 1] + v[c + 1] + v[c - stride] + v[c + stride]) * 0.25;
                total += avg[l];
            }
            const Point z = g.point(i, j);
            for (int l = 0; l < m; ++l) {
                const double u = state.comp[l].values[c];
                const double A = 2.0 * avg[l] - total;
                const double rhs =
                    std::max(-eval_f(p.dynamics[l], z, std::max(u, 0.0)) * q + A, 0.0);
                res = std::max(res, std::abs(u - rhs));
            }
        }
    }
    return res;
}

} // namespace segreg
