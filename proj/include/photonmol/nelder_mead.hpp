#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Core>

namespace photonmol {

template <typename Scalar, int N>
struct NelderMeadResult {
    Eigen::Matrix<Scalar, N, 1> x;
    Scalar value;
    int evaluations = 0;
    bool converged = false;
};

/// Derivative-free minimization with the standard reflection/expansion/contraction/
/// shrink coefficients (1, 2, 1/2, 1/2). Converges when every vertex lies within
/// `tolerance(i, best)` of the best vertex in each coordinate i. Non-finite objective
/// values are treated as +infinity.
template <int N, typename Scalar, typename Objective, typename Tolerance>
NelderMeadResult<Scalar, N> nelder_mead(Objective&& objective,
                                        const Eigen::Matrix<Scalar, N, 1>& start,
                                        const Eigen::Matrix<Scalar, N, 1>& step,
                                        Tolerance&& tolerance, int max_evaluations = 4000) {
    using Point = Eigen::Matrix<Scalar, N, 1>;
    constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();

    int evaluations = 0;
    auto eval = [&](const Point& p) {
        ++evaluations;
        const Scalar v = objective(p);
        return std::isfinite(v) ? v : inf;
    };

    std::array<Point, N + 1> simplex;
    std::array<Scalar, N + 1> values;
    simplex[0] = start;
    values[0] = eval(start);
    for (int i = 0; i < N; ++i) {
        simplex[i + 1] = start;
        simplex[i + 1](i) += step(i);
        values[i + 1] = eval(simplex[i + 1]);
    }

    std::array<int, N + 1> order;
    auto sort_vertices = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
    };

    bool converged = false;
    while (evaluations < max_evaluations) {
        sort_vertices();
        const Point& best = simplex[order[0]];

        converged = true;
        for (int v = 1; v <= N && converged; ++v)
            for (int i = 0; i < N; ++i)
                if (std::abs(simplex[order[v]](i) - best(i)) > tolerance(i, best)) {
                    converged = false;
                    break;
                }
        if (converged)
            break;

        const int worst = order[N];
        Point centroid = Point::Zero();
        for (int v = 0; v < N; ++v)
            centroid += simplex[order[v]];
        centroid /= Scalar(N);

        const Point reflected = centroid + (centroid - simplex[worst]);
        const Scalar f_reflected = eval(reflected);
        if (f_reflected < values[order[0]]) {
            const Point expanded = centroid + Scalar(2) * (centroid - simplex[worst]);
            const Scalar f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[order[N - 1]]) {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }
        const bool outside = f_reflected < values[worst];
        const Point contracted = outside ? Point(centroid + Scalar(0.5) * (reflected - centroid))
                                         : Point(centroid + Scalar(0.5) * (simplex[worst] - centroid));
        const Scalar f_contracted = eval(contracted);
        if (f_contracted < (outside ? f_reflected : values[worst])) {
            simplex[worst] = contracted;
            values[worst] = f_contracted;
            continue;
        }
        // shrink toward the best vertex
        const Point anchor = simplex[order[0]];
        for (int v = 1; v <= N; ++v) {
            Point& p = simplex[order[v]];
            p = anchor + Scalar(0.5) * (p - anchor);
            values[order[v]] = eval(p);
        }
    }
    sort_vertices();
    return {simplex[order[0]], values[order[0]], evaluations, converged};
}

}  // namespace photonmol
