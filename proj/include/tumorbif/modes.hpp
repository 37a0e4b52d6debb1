#pragma once

#include "tumorbif/periodic_solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tumorbif {

struct Decomposition {
    int n = 0;
    int m = 0;
    long j = 0;
    bool canonical = true; ///< n >= m
};

bool is_perfect_square(long v, long* root = nullptr);

/// Canonical pairs n >= m >= 0 with n^2 + m^2 = j, in increasing m.
std::vector<Decomposition> decompose(long j);
int alpha(long j);

enum class BranchKind { Product, PlusForm };
std::string to_string(BranchKind kind);

struct Branch {
    BranchKind kind = BranchKind::Product;
    int n = 0;
    int m = 0;      ///< equals n for PlusForm
    long source_j = 0; ///< mode index whose amplitude drives this branch
    std::string rule;  ///< which counting rule produced the branch
};

struct BranchAtlas {
    long j = 0;
    double gamma_value = 0.0;
    std::optional<long> collision_partner;
    std::string collision_case = "none"; ///< "none", "A" or "B"
    std::vector<Branch> branches;
    int count_beta = 0;   ///< alpha of the larger colliding index (alpha_j without collision)
    int count_case_a = 0; ///< alpha_{j1} + alpha_{j2} under a case A collision, else count_beta
    std::vector<std::string> warnings;
};

struct CollisionSet {
    std::vector<long> partners;
    std::optional<std::string> warning;
};

/// Integers i in (j0, j_max], i != j, with |gamma_i - gamma_j| <= tol_rel |gamma_j|.
CollisionSet collision_set(const PeriodicOrbit& orbit, long j, long j_max, double tol_rel = 1e-9);

/// Branch list from the counting rules alone.
BranchAtlas assemble_atlas(long j, double gamma_value, std::optional<long> partner = std::nullopt);

BranchAtlas branch_atlas(const PeriodicOrbit& orbit, long j, long j_max, double tol_rel = 1e-9);

struct ModeProfile {
    double w = 0.0;
    double q = 0.0;
    double dq_dy_at_boundary = 0.0;
};

/// Linearized nutrient and pressure perturbations of mode (n, m) at depth y,
/// with unit amplitude. gamma defaults to the orbit's model adhesiveness.
ModeProfile mode_profiles(const PeriodicOrbit& orbit, int n, int m, double t, double y,
                          std::optional<double> gamma = std::nullopt);

/// max over the orbit grid of |S' + (d2p*/dy2) S + dq/dy S| for the periodic
/// candidate S(t) = exp(-(int_0^t A - t mean(A))).
double kernel_residual(const PeriodicOrbit& orbit, long j, double gamma);
double kernel_residual(const PeriodicOrbit& orbit, int n, int m, double gamma);

double shape_value(const Branch& branch, double x1, double x2);

struct SurfaceSample {
    Branch branch;
    double epsilon = 0.0;
    double gamma = 0.0;
    int nx = 0;
    int nt = 0;
    std::vector<double> times;     ///< nt points, k T / (nt - 1)
    std::vector<double> x;         ///< nx points, 2 pi i / nx
    std::vector<double> rho_star;  ///< per time
    std::vector<double> amplitude; ///< S(t) per time
    std::vector<double> heights;   ///< index (it * nx + i1) * nx + i2

    double height(int it, int i1, int i2) const
    {
        return heights[(static_cast<std::size_t>(it) * nx + i1) * nx + i2];
    }
};

/// First-order surface rho*(t) + eps S(t) shape(x1, x2); |eps| <= 0.1 rho_min.
SurfaceSample sample_surface(const PeriodicOrbit& orbit, const BranchAtlas& atlas, int branch_index,
                             double epsilon, int nx, int nt);
SurfaceSample sample_surface_serial(const PeriodicOrbit& orbit, const BranchAtlas& atlas,
                                    int branch_index, double epsilon, int nx, int nt);

} // namespace tumorbif
