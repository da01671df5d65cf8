#include "starshape/fields.hpp"

#include <stdexcept>

#include "starshape/parallel.hpp"

namespace starshape {

ScalarField::ScalarField(GridPtr g, double fill) : grid(std::move(g)) {
    v.assign(grid->nodes(), fill);
}

ScalarField::ScalarField(GridPtr g, std::vector<double> values)
    : grid(std::move(g)), v(std::move(values)) {
    if (v.size() != grid->nodes())
        throw std::invalid_argument("ScalarField: value count does not match grid");
}

TensorField::TensorField(GridPtr g, int cov_rank, int con_rank, bool sym)
    : grid(std::move(g)), cov(cov_rank), con(con_rank), symmetric(sym) {
    if (cov < 0 || con < 0 || cov + con > 2)
        throw std::invalid_argument("TensorField: total valence must be <= 2");
    std::size_t s = 1;
    for (int r = 0; r < cov + con; ++r) s *= grid->n;
    v.assign(grid->nodes() * s, 0.0);
}

int TensorField::span() const {
    int s = 1;
    for (int r = 0; r < rank(); ++r) s *= grid->n;
    return s;
}

SigmaMetric sigma_metric(const GridPtr& grid) {
    const int n = grid->n;
    SigmaMetric out{TensorField(grid, 2, 0, true), TensorField(grid, 0, 2, true),
                    ConnectionField{grid, {}}};
    parallel_for(grid->nodes(), [&](std::size_t node) {
        for (int a = 0; a < n; ++a) {
            out.metric.at(node, a, a) = grid->sigma_diag[node * n + a];
            out.metric_inv.at(node, a, a) = grid->sigma_inv_diag[node * n + a];
        }
    });
    out.christoffel.v = grid->christoffel;
    return out;
}

ScalarField coordinate_field(const GridPtr& grid, int ambient_index) {
    if (ambient_index < 0 || ambient_index > grid->n)
        throw std::invalid_argument("coordinate_field: ambient index out of range");
    ScalarField f(grid);
    parallel_for(grid->nodes(), [&](std::size_t node) {
        f.v[node] = grid->node_coords(node)[ambient_index];
    });
    return f;
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (a.grid.get() != b.grid.get())
        throw std::invalid_argument("fields live on different grids");
}

}  // namespace starshape
