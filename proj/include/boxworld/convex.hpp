#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "boxworld/exact_scalar.hpp"

namespace boxworld {

inline int field_sign(const Rational& v) { return v.sign(); }
inline int field_sign(const ExactScalar& v) { return v.sign(); }

// Exact convex-hull membership: find lambda >= 0 with sum(lambda) = 1 and
// sum(lambda_j * generators[j]) = target, or nullopt when infeasible.
//
// Phase-1 simplex on the equality system with one artificial variable per
// row. Bland's rule prevents cycling; artificial columns are dropped once
// they leave the basis. All arithmetic is exact, so feasibility answers are
// decisions, not approximations.
template <typename Field>
std::optional<std::vector<Field>> convex_combination(
    const std::vector<std::vector<Field>>& generators, const std::vector<Field>& target) {
    const std::size_t n = generators.size();
    if (n == 0) return std::nullopt;
    const std::size_t d = target.size();
    const std::size_t m = d + 1;  // coordinates plus the sum-to-one row

    // tableau[i] = [columns for lambda..., rhs]; artificial columns are
    // implicit (identity on the starting basis).
    std::vector<std::vector<Field>> a(m, std::vector<Field>(n));
    std::vector<Field> rhs(m);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (generators[j].size() != d) return std::nullopt;
            a[i][j] = generators[j][i];
        }
        rhs[i] = target[i];
    }
    for (std::size_t j = 0; j < n; ++j) a[d][j] = Field(1);
    rhs[d] = Field(1);

    for (std::size_t i = 0; i < m; ++i) {
        if (field_sign(rhs[i]) < 0) {
            for (auto& v : a[i]) v = Field(0) - v;
            rhs[i] = Field(0) - rhs[i];
        }
    }

    // basis[i] < n: lambda_j basic in row i; basis[i] == n + i: artificial.
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // phase-1 reduced costs: cost 1 on artificials, 0 on lambda
    std::vector<Field> reduced(n);
    Field objective(0);
    for (std::size_t j = 0; j < n; ++j) {
        Field s(0);
        for (std::size_t i = 0; i < m; ++i) s += a[i][j];
        reduced[j] = Field(0) - s;
    }
    for (std::size_t i = 0; i < m; ++i) objective = objective - rhs[i];

    std::vector<bool> column_dead(n, false);
    for (;;) {
        // Bland: entering column = smallest index with negative reduced cost
        std::size_t enter = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (!column_dead[j] && field_sign(reduced[j]) < 0) {
                enter = j;
                break;
            }
        }
        if (enter == n) break;  // optimal

        // ratio test with Bland tie-break on basis index
        std::size_t leave = m;
        Field best_num(0), best_den(1);
        for (std::size_t i = 0; i < m; ++i) {
            if (field_sign(a[i][enter]) <= 0) continue;
            if (leave == m) {
                leave = i;
                best_num = rhs[i];
                best_den = a[i][enter];
                continue;
            }
            const Field diff = rhs[i] * best_den - best_num * a[i][enter];
            const int cmp = field_sign(diff);
            if (cmp < 0 || (cmp == 0 && basis[i] < basis[leave])) {
                leave = i;
                best_num = rhs[i];
                best_den = a[i][enter];
            }
        }
        if (leave == m) {
            // phase-1 objective is bounded below; an unbounded column is
            // useless for feasibility, never pick it again
            column_dead[enter] = true;
            continue;
        }

        // pivot on (leave, enter)
        const Field pivot = a[leave][enter];
        for (std::size_t j = 0; j < n; ++j) a[leave][j] = a[leave][j] / pivot;
        rhs[leave] = rhs[leave] / pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            const Field f = a[i][enter];
            if (field_sign(f) == 0) continue;
            for (std::size_t j = 0; j < n; ++j) a[i][j] = a[i][j] - f * a[leave][j];
            rhs[i] = rhs[i] - f * rhs[leave];
        }
        const Field fr = reduced[enter];
        for (std::size_t j = 0; j < n; ++j) reduced[j] = reduced[j] - fr * a[leave][j];
        objective = objective - fr * rhs[leave];

        basis[leave] = enter;
    }

    if (field_sign(objective) != 0) return std::nullopt;

    std::vector<Field> lambda(n, Field(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) lambda[basis[i]] = rhs[i];
    return lambda;
}

}  // namespace boxworld
