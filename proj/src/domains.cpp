#include "wcert/domains.hpp"

#include <sstream>

#include "wcert/errors.hpp"

namespace wcert {

Region Region::full_space(int dim) {
  Region r;
  r.kind_ = Kind::FullSpace;
  r.bbox_ = Box::cube(dim, -kInf, kInf);
  return r;
}

Region Region::box(const Box& b, bool closed) {
  Region r;
  r.kind_ = Kind::Box;
  r.bbox_ = b;
  r.closed_ = closed;
  bool any_finite = false;
  for (int i = 0; i < b.dim(); ++i) {
    if (!(b.lo[i] < b.hi[i])) throw ConstructionError("region box is empty on axis " + std::to_string(i));
    any_finite = any_finite || std::isfinite(b.lo[i]) || std::isfinite(b.hi[i]);
  }
  if (!any_finite) r.kind_ = Kind::FullSpace;
  return r;
}

Region Region::custom(const Box& bbox, Membership member, BoundaryDistance dist, bool closed) {
  Region r;
  r.kind_ = Kind::Custom;
  r.bbox_ = bbox;
  r.closed_ = closed;
  r.member_ = std::move(member);
  r.dist_ = std::move(dist);
  return r;
}

bool Region::contains(const Point& x) const {
  switch (kind_) {
    case Kind::FullSpace:
      return true;
    case Kind::Box:
      for (int i = 0; i < dim(); ++i) {
        if (closed_) {
          if (x[i] < bbox_.lo[i] || x[i] > bbox_.hi[i]) return false;
        } else {
          if (!(x[i] > bbox_.lo[i] && x[i] < bbox_.hi[i])) return false;
        }
      }
      return true;
    case Kind::Custom:
      return member_(x);
  }
  return false;
}

double Region::boundary_distance(const Point& x, Norm norm) const {
  switch (kind_) {
    case Kind::FullSpace:
      return kInf;
    case Kind::Box: {
      // For points of the closed box the nearest boundary point lies on a
      // face, so the distance is the same in the max norm and the Euclidean norm.
      double d = kInf;
      for (int i = 0; i < dim(); ++i) {
        if (std::isfinite(bbox_.lo[i])) d = std::min(d, x[i] - bbox_.lo[i]);
        if (std::isfinite(bbox_.hi[i])) d = std::min(d, bbox_.hi[i] - x[i]);
      }
      return std::max(d, 0.0);
    }
    case Kind::Custom:
      return dist_(x, norm);
  }
  return kInf;
}

Region Region::closure() const {
  Region r = *this;
  if (kind_ == Kind::Custom) {
    // Boundary points are at distance zero; accept them.
    auto member = member_;
    auto dist = dist_;
    r.member_ = [member, dist](const Point& x) { return member(x) || dist(x, Norm::Inf) == 0.0; };
  }
  r.closed_ = true;
  return r;
}

std::vector<Point> Region::boundary_samples(double resolution, const Box& window) const {
  std::vector<Point> out;
  if (kind_ == Kind::FullSpace) return out;
  const Box clip = bbox_.intersect(window);
  if (!clip.bounded()) throw ArgumentError("boundary sampling window must be bounded");
  Lattice lat(dim(), resolution);
  if (kind_ == Kind::Box) {
    for (int ax = 0; ax < dim(); ++ax) {
      for (double face : {bbox_.lo[ax], bbox_.hi[ax]}) {
        if (!std::isfinite(face) || face < window.lo[ax] || face > window.hi[ax]) continue;
        Box f = clip;
        f.lo[ax] = f.hi[ax] = 0.0;
        for (Point p : lat.points(f, [](const Point&) { return true; })) {
          p[ax] = face;
          out.push_back(p);
        }
      }
    }
    return out;
  }
  return lat.points(clip, [&](const Point& p) {
    return member_(p) && dist_(p, Norm::Inf) <= resolution;
  });
}

std::string to_string(RegionKind k) {
  switch (k) {
    case RegionKind::FullSpace: return "full_space";
    case RegionKind::OpenBox: return "open_box";
    case RegionKind::BoundedOpenSet: return "bounded_open_set_with_distance_fn";
    case RegionKind::SlabTruncation: return "slab_truncation";
    case RegionKind::CompactExhaustion: return "compact_exhaustion_interiors";
  }
  return "unknown";
}

ExhaustionDomain ExhaustionDomain::full_space(int dim) {
  ExhaustionDomain d;
  d.kind_ = RegionKind::FullSpace;
  d.omega_ = Region::full_space(dim);
  return d;
}

ExhaustionDomain ExhaustionDomain::growing_box(int dim, double scale) {
  if (!(scale > 0)) throw ConstructionError("growing box scale must be positive");
  ExhaustionDomain d;
  d.kind_ = RegionKind::OpenBox;
  d.omega_ = Region::full_space(dim);
  d.scale_ = scale;
  for (int i = 0; i < dim; ++i) d.axes_.push_back(i);
  return d;
}

ExhaustionDomain ExhaustionDomain::slab(int dim, std::vector<int> bounded_axes, double scale) {
  if (!(scale > 0)) throw ConstructionError("slab scale must be positive");
  if (bounded_axes.empty()) throw ConstructionError("slab needs at least one bounded axis");
  for (int a : bounded_axes)
    if (a < 0 || a >= dim) throw ConstructionError("slab axis out of range");
  ExhaustionDomain d;
  d.kind_ = RegionKind::SlabTruncation;
  d.omega_ = Region::full_space(dim);
  d.scale_ = scale;
  d.axes_ = std::move(bounded_axes);
  return d;
}

ExhaustionDomain ExhaustionDomain::bounded_set(const Region& omega) {
  if (!omega.bounded()) throw ConstructionError("bounded_set requires a bounded region");
  ExhaustionDomain d;
  d.kind_ = RegionKind::BoundedOpenSet;
  d.omega_ = omega;
  return d;
}

ExhaustionDomain ExhaustionDomain::compact_exhaustion(const Box& omega) {
  if (!omega.bounded()) throw ConstructionError("compact exhaustion requires a bounded box");
  for (int i = 0; i < omega.dim(); ++i)
    if (!(omega.hi[i] - omega.lo[i] > 2.0 / 3.0))
      throw ConstructionError("compact exhaustion: first level is empty (box side must exceed 2/3)");
  ExhaustionDomain d;
  d.kind_ = RegionKind::CompactExhaustion;
  d.omega_ = Region::box(omega);
  return d;
}

ExhaustionDomain ExhaustionDomain::custom(RegionKind kind, const Region& omega,
                                          std::function<Region(int)> level) {
  ExhaustionDomain d;
  d.kind_ = kind;
  d.omega_ = omega;
  d.level_ = std::move(level);
  return d;
}

ExhaustionDomain ExhaustionDomain::closure() const {
  ExhaustionDomain d = *this;
  d.closure_ = true;
  return d;
}

Region ExhaustionDomain::level(int n) const {
  if (n < 1) throw ArgumentError("exhaustion levels start at 1");
  Region r;
  const int d = dim();
  if (level_) {
    r = level_(n);
  } else {
    switch (kind_) {
      case RegionKind::FullSpace:
        return Region::full_space(d);  // R^d is closed; the flag changes nothing
      case RegionKind::BoundedOpenSet:
        r = omega_;
        break;
      case RegionKind::OpenBox:
      case RegionKind::SlabTruncation: {
        Box b = Box::cube(d, -kInf, kInf);
        for (int a : axes_) {
          b.lo[a] = -scale_ * n;
          b.hi[a] = scale_ * n;
        }
        r = Region::box(b);
        break;
      }
      case RegionKind::CompactExhaustion: {
        Box b = omega_.bounding_box();
        const double inset = 1.0 / (n + 2);
        for (int i = 0; i < d; ++i) {
          b.lo[i] += inset;
          b.hi[i] -= inset;
        }
        r = Region::box(b);
        break;
      }
    }
  }
  return closure_ ? r.closure() : r;
}

std::string ExhaustionDomain::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << " d=" << dim();
  if (kind_ == RegionKind::OpenBox || kind_ == RegionKind::SlabTruncation) os << " scale=" << scale_;
  if (closure_) os << " closed";
  return os.str();
}

double dist_inf_boundary(const ExhaustionDomain& domain, const Point& x, Norm norm) {
  if (!domain.omega().contains(x))
    throw DomainMembershipError("dist_inf_boundary: point " + x.str() + " is not in Omega");
  return domain.omega().boundary_distance(x, norm);
}

double ring_distance(const ExhaustionDomain& domain, int n, const Point& x) {
  if (!domain.in_level(n, x))
    throw DomainMembershipError("ring_distance: point " + x.str() + " is not in level " +
                                std::to_string(n));
  return domain.level(n + 1).boundary_distance(x, Norm::Inf);
}

GapEstimate exhaustion_gap(const ExhaustionDomain& domain, int n, double sample_resolution) {
  GapEstimate g;
  const Region inner = domain.level(n);
  const Region outer = domain.level(n + 1);
  if (outer.is_full_space()) {
    g.full_space = true;
    return g;
  }
  if (domain.analytic()) {
    const Box& bi = inner.bounding_box();
    const Box& bo = outer.bounding_box();
    double v = kInf;
    for (int i = 0; i < domain.dim(); ++i) {
      if (std::isfinite(bo.lo[i])) v = std::min(v, bi.lo[i] - bo.lo[i]);
      if (std::isfinite(bo.hi[i])) v = std::min(v, bo.hi[i] - bi.hi[i]);
    }
    g.value = std::max(v, 0.0);
    return g;
  }
  if (!(sample_resolution > 0)) throw ArgumentError("exhaustion_gap: resolution must be positive");
  if (!inner.bounded()) throw ArgumentError("exhaustion_gap: sampled estimate needs a bounded level");
  Lattice lat(domain.dim(), sample_resolution);
  double v = kInf;
  for (const Point& p : lat.points(inner.bounding_box(), [&](const Point& q) { return inner.contains(q); }))
    v = std::min(v, outer.boundary_distance(p, Norm::Inf));
  g.exact = false;
  g.resolution = sample_resolution;
  g.value = std::max(0.0, v - sample_resolution);
  return g;
}

std::vector<Point> sample_level(const ExhaustionDomain& domain, int n, const Box& truncation,
                                const Lattice& lattice, long stride) {
  const Region r = domain.level(n);
  const Box b = r.bounding_box().intersect(truncation);
  if (!b.bounded()) throw ArgumentError("sampling an unbounded level needs a bounded truncation box");
  return lattice.points(b, [&](const Point& p) { return r.contains(p); }, stride);
}

}  // namespace wcert
