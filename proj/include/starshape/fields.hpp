#pragma once
#include <string>
#include <vector>

#include "starshape/grid.hpp"

namespace starshape {

struct ScalarField {
    GridPtr grid;
    std::vector<double> v;  // one value per node

    ScalarField() = default;
    ScalarField(GridPtr g, double fill = 0.0);
    ScalarField(GridPtr g, std::vector<double> values);

    std::size_t size() const { return v.size(); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
};

/// Coordinate-component tensor of total valence <= 2 in the hyperspherical
/// frame; components stored node-major as [node*n^rank + i*n + j].
struct TensorField {
    GridPtr grid;
    int cov = 0;  // covariant slots
    int con = 0;  // contravariant slots
    bool symmetric = false;
    std::vector<double> v;

    TensorField() = default;
    TensorField(GridPtr g, int cov_rank, int con_rank, bool sym = false);

    int rank() const { return cov + con; }
    int span() const;
    double at(std::size_t node, int i) const { return v[node * span() + i]; }
    double at(std::size_t node, int i, int j) const {
        return v[(node * span()) + i * grid->n + j];
    }
    double& at(std::size_t node, int i) { return v[node * span() + i]; }
    double& at(std::size_t node, int i, int j) { return v[(node * span()) + i * grid->n + j]; }
};

/// Three-index connection coefficients, [((node*n + k)*n + i)*n + j].
struct ConnectionField {
    GridPtr grid;
    std::vector<double> v;
    double at(std::size_t node, int k, int i, int j) const {
        const int n = grid->n;
        return v[((node * n + k) * n + i) * n + j];
    }
};

struct SigmaMetric {
    TensorField metric;      // (0,2)
    TensorField metric_inv;  // (2,0)
    ConnectionField christoffel;
};

/// Round metric, inverse and Christoffel symbols as dense fields.
SigmaMetric sigma_metric(const GridPtr& grid);

/// Samples of the ambient coordinate function x_c (0-based, c in [0, n]).
ScalarField coordinate_field(const GridPtr& grid, int ambient_index);

void require_same_grid(const ScalarField& a, const ScalarField& b);

}  // namespace starshape
