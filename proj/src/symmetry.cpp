#include "polyrad/symmetry.hpp"

#include <string>

namespace polyrad {

std::string_view to_string(AsymmetryKind kind)
{
    switch (kind) {
    case AsymmetryKind::Minkowski: return "minkowski";
    case AsymmetryKind::John: return "john";
    case AsymmetryKind::Loewner: return "loewner";
    }
    return "unknown";
}

AsymmetryResult minkowski_asymmetry(const Body& k, const ContainmentOptions& opts)
{
    const auto r = circumradius(negate(k), k, opts);
    return {r.rho, -r.center / (r.rho + 1), AsymmetryKind::Minkowski};
}

double centered_asymmetry(const Body& k, const Vector& c0)
{
    if (c0.size() != k.dim()) raise(ErrorCode::DimensionMismatch, "center length");
    const HPolytope& h = k.h();
    double scale = 1.0;
    for (double b : h.offsets) scale = std::max(scale, std::abs(b));
    double rho = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) {
        const double slack = h.offsets[j] - h.normals[j].dot(c0);
        if (slack <= kGeomTol * scale * h.normals[j].norm())
            raise(ErrorCode::CenterOutside, "center violates row " + std::to_string(j) + " (slack " + std::to_string(slack) + ")");
        rho = std::max(rho, (support(k, -h.normals[j]) + h.normals[j].dot(c0)) / slack);
    }
    return rho;
}

AsymmetryResult john_asymmetry(const Body& k, double eps)
{
    const Ellipsoid e = john_ellipsoid(k.h(), eps);
    return {centered_asymmetry(k, e.center), e.center, AsymmetryKind::John};
}

AsymmetryResult loewner_asymmetry(const Body& k, double eps)
{
    const Ellipsoid e = loewner_ellipsoid(k.v(), eps);
    return {centered_asymmetry(k, e.center), e.center, AsymmetryKind::Loewner};
}

}  // namespace polyrad
