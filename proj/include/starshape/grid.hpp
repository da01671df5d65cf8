#pragma once
#include <Eigen/Dense>
#include <memory>
#include <span>
#include <vector>

namespace starshape {

/// One coordinate axis of the hyperspherical chart. Polar axes carry
/// Gauss-Jacobi nodes in cos(theta) (weight absorbing the sin^m density of
/// that axis) and trigonometric collocation in theta; the azimuthal axis is
/// uniform with discrete-Fourier differentiation.
struct GridAxis {
    bool azimuthal = false;
    int count = 0;
    double jacobi_alpha = 0.0;       // polar: (m-1)/2 for density sin^m
    std::vector<double> nodes;       // theta in (0,pi) ascending, or phi in [0,2pi)
    std::vector<double> weights;     // 1-D quadrature weights (density absorbed)
    Eigen::MatrixXd d1, d2;          // collocation derivative matrices
    Eigen::MatrixXd basis_inv;       // polar only: inverse of the trig Vandermonde
    int cos_count = 0, sin_count = 0;
    int max_degree = 0;              // largest fully representable band

    // Interpolation row: weights w such that p(x) = sum_k w[k] f(node_k)
    // for any function in the axis collocation space.
    std::vector<double> interp_row(double x) const;
};

class SphereGrid;
using GridPtr = std::shared_ptr<const SphereGrid>;

/// Collocation grid on S^n in hyperspherical coordinates
/// (t_0..t_{n-2} polar, t_{n-1} azimuthal):
///   x_{n+1} = cos t_0,  x_{n+1-k} = sin t_0 .. sin t_{k-1} cos t_k,
///   x_1     = sin t_0 .. sin t_{n-1}
/// (1-based ambient labels; storage is 0-based with x_1 at index 0).
/// The round metric sigma is diagonal: sigma_aa = prod_{b<a} sin^2 t_b.
class SphereGrid : public std::enable_shared_from_this<SphereGrid> {
  public:
    int n = 0;                      // intrinsic dimension
    std::vector<int> shape;         // per-axis node counts
    std::vector<GridAxis> axes;
    std::size_t node_count = 0;
    int max_degree = 0;             // band limit (min over axes)

    std::vector<double> quad_weights;    // [node]
    std::vector<double> sigma_diag;      // [node*n + a]
    std::vector<double> sigma_inv_diag;  // [node*n + a]
    std::vector<double> christoffel;     // [((node*n + k)*n + i)*n + j]
    std::vector<double> coords;          // [node*(n+1) + c], ambient point
    std::vector<double> tangents;        // [(node*n + a)*(n+1) + c] = d x / d t_a

    int ambient_dim() const { return n + 1; }
    std::size_t nodes() const { return node_count; }

    std::size_t node_index(std::span<const int> multi) const;
    void multi_index(std::size_t node, std::span<int> out) const;
    double angle(std::size_t node, int axis) const;

    // strides for applying a matrix along `axis` of a node-major array
    std::size_t outer_extent(int axis) const;
    std::size_t inner_extent(int axis) const;

    double sphere_volume() const;  // Vol_n(S^n)

    const double* node_coords(std::size_t node) const { return coords.data() + node * (n + 1); }
    const double* node_tangent(std::size_t node, int axis) const {
        return tangents.data() + (node * n + axis) * (n + 1);
    }
    double gamma(std::size_t node, int k, int i, int j) const {
        return christoffel[((node * n + k) * n + i) * n + j];
    }

    // angles of an arbitrary unit direction in this chart
    std::vector<double> direction_angles(std::span<const double> direction) const;
};

/// Build a grid. Requires n >= 2, every polar count >= 4 and the azimuthal
/// count >= 4 and even. Throws std::invalid_argument otherwise.
GridPtr make_grid(int n, std::vector<int> shape);

double unit_sphere_volume(int n);

}  // namespace starshape
