#include "saddlepairs/enumerate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>

#include "saddlepairs/errors.hpp"

namespace saddlepairs {

namespace {

bool sc_less(const SaddleConnection& a, const SaddleConnection& b) {
  if (a.holonomy.x != b.holonomy.x) return a.holonomy.x < b.holonomy.x;
  if (a.holonomy.y != b.holonomy.y) return a.holonomy.y < b.holonomy.y;
  if (a.start_cone_point != b.start_cone_point)
    return a.start_cone_point < b.start_cone_point;
  if (a.end_cone_point != b.end_cone_point)
    return a.end_cone_point < b.end_cone_point;
  return a.fingerprint < b.fingerprint;
}

// ----- origami tracing -----

// One straight trace of displacement (p, q) through the square complex.
// Families by direction sign (primitive p, q):
//   p >= 1, q >= 1  from the bottom-left corner of each square
//   p <= -1, q >= 1 from the bottom-right corner
//   (1, 0)          along the bottom edge, (0, 1) along the right edge
// Integer crossing times: vertical candidates k/|p|, horizontal m/q, compared
// exactly via k*q vs m*|p|; primitivity rules out ties and interior corner
// hits, so every trace is a saddle connection.
struct OrigamiTracer {
  const Origami& o;
  Perm hinv, vinv;
  bool record;  // store crossings and fingerprints

  explicit OrigamiTracer(const Origami& s, bool record_details)
      : o(s), hinv(inverse_perm(s.h)), vinv(inverse_perm(s.v)),
        record(record_details) {}

  SaddleConnection trace(std::int64_t p, std::int64_t q, int start) const {
    SaddleConnection sc;
    sc.holonomy = Vec2::integer(p, q);
    std::vector<int> fp;
    if (record) fp.assign(2 * o.n, 0);
    int cur = start;
    const std::int64_t pa = std::llabs(p);
    const bool leftward = p < 0;
    std::int64_t k = 1, m = 1;  // next vertical / horizontal crossing index
    while (k < pa || m < q) {
      const bool vertical = m >= q || (k < pa && k * q < m * pa);
      if (vertical) {
        if (leftward) {
          if (record) {
            fp[cur] -= 1;
            sc.crossings.push_back({hinv[cur], Side::Right});
          }
          cur = hinv[cur];
        } else {
          cur = o.h[cur];
          if (record) {
            fp[cur] += 1;
            sc.crossings.push_back({cur, Side::Left});
          }
        }
        ++k;
      } else {
        cur = o.v[cur];
        if (record) {
          fp[o.n + cur] += 1;
          sc.crossings.push_back({cur, Side::Bottom});
        }
        ++m;
      }
    }
    int start_corner, end_corner;
    if (p >= 1 && q >= 1) {
      start_corner = BL;
      end_corner = TR;
    } else if (p <= -1) {
      start_corner = BR;
      end_corner = TL;
    } else if (q == 0) {  // (1, 0)
      start_corner = BL;
      end_corner = BR;
    } else {  // (0, 1)
      start_corner = BR;
      end_corner = TR;
    }
    sc.start_cone_point = o.corner_class[4 * start + start_corner];
    sc.end_cone_point = o.corner_class[4 * cur + end_corner];
    sc.fingerprint = std::move(fp);
    return sc;
  }

  SaddleConnection reverse(const SaddleConnection& sc) const {
    SaddleConnection r;
    r.holonomy = negate(sc.holonomy);
    r.start_cone_point = sc.end_cone_point;
    r.end_cone_point = sc.start_cone_point;
    r.fingerprint.reserve(sc.fingerprint.size());
    for (int x : sc.fingerprint) r.fingerprint.push_back(-x);
    r.crossings.reserve(sc.crossings.size());
    for (auto it = sc.crossings.rbegin(); it != sc.crossings.rend(); ++it) {
      switch (it->side) {
        case Side::Left: r.crossings.push_back({hinv[it->cell], Side::Right}); break;
        case Side::Right: r.crossings.push_back({o.h[it->cell], Side::Left}); break;
        case Side::Bottom: r.crossings.push_back({vinv[it->cell], Side::Top}); break;
        case Side::Top: r.crossings.push_back({o.v[it->cell], Side::Bottom}); break;
      }
    }
    return r;
  }
};

// Primitive directions of the traced half: q >= 1 together with (1, 0).
template <typename Fn>
void for_traced_directions(double R, Fn&& fn) {
  const double R2 = R * R;
  const std::int64_t pmax = static_cast<std::int64_t>(std::floor(R));
  if (pmax >= 1) fn(1, 0);
  for (std::int64_t q = 1; q <= pmax; ++q) {
    const double rem = R2 - static_cast<double>(q) * static_cast<double>(q);
    if (rem < 0) break;
    const std::int64_t plim = static_cast<std::int64_t>(std::floor(std::sqrt(rem)));
    for (std::int64_t p = -plim; p <= plim; ++p) {
      if (std::gcd(std::llabs(p), q) != 1) continue;
      if (static_cast<double>(p * p + q * q) > R2) continue;
      fn(p, q);
    }
  }
}

}  // namespace

Enumeration saddle_connections(const Origami& s, double R) {
  require(R > 0.0, ErrorCode::RadiusNonPositive,
          "enumeration radius must be positive");
  OrigamiTracer tracer(s, /*record_details=*/true);
  Enumeration out;
  for_traced_directions(R, [&](std::int64_t p, std::int64_t q) {
    for (int start = 0; start < s.n; ++start) {
      SaddleConnection sc = tracer.trace(p, q, start);
      out.connections.push_back(tracer.reverse(sc));
      out.connections.push_back(std::move(sc));
    }
  });
  std::sort(out.connections.begin(), out.connections.end(), sc_less);
  return out;
}

HolonomySet holonomy_set(const Origami& s, double R, bool dedupe) {
  require(R > 0.0, ErrorCode::RadiusNonPositive,
          "enumeration radius must be positive");
  OrigamiTracer tracer(s, /*record_details=*/false);
  HolonomySet set;
  set.radius = R;
  set.deduped = dedupe;
  for_traced_directions(R, [&](std::int64_t p, std::int64_t q) {
    long long found = 0;
    for (int start = 0; start < s.n; ++start) {
      tracer.trace(p, q, start);  // walk verifies the connection closes
      ++found;
    }
    if (dedupe) {
      set.vectors.push_back(Vec2::integer(p, q));
      set.multiplicities.push_back(found);
      set.vectors.push_back(Vec2::integer(-p, -q));
      set.multiplicities.push_back(found);
    } else {
      for (long long i = 0; i < found; ++i) {
        set.vectors.push_back(Vec2::integer(p, q));
        set.multiplicities.push_back(1);
        set.vectors.push_back(Vec2::integer(-p, -q));
        set.multiplicities.push_back(1);
      }
    }
  });
  return set;
}

HolonomySet dedupe_holonomies(const HolonomySet& set) {
  if (set.deduped) return set;
  std::vector<std::size_t> idx(set.vectors.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Vec2& u = set.vectors[a];
    const Vec2& w = set.vectors[b];
    return u.x != w.x ? u.x < w.x : u.y < w.y;
  });
  HolonomySet out;
  out.radius = set.radius;
  out.deduped = true;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Vec2& v = set.vectors[idx[i]];
    if (!out.vectors.empty() && out.vectors.back() == v) {
      out.multiplicities.back() += set.multiplicities[idx[i]];
    } else {
      out.vectors.push_back(v);
      out.multiplicities.push_back(set.multiplicities[idx[i]]);
    }
  }
  return out;
}

// ----- polygon surfaces: triangulate + develop -----

namespace {

struct Tri {
  int poly;
  std::array<int, 3> v;  // CCW vertex indices within the polygon
};

double cross2(double ax, double ay, double bx, double by) {
  return ax * by - ay * bx;
}

std::vector<Tri> triangulate(const PolygonSurface& s) {
  std::vector<Tri> tris;
  for (std::size_t p = 0; p < s.polygons.size(); ++p) {
    const auto& poly = s.polygons[p];
    std::vector<int> ring(poly.size());
    std::iota(ring.begin(), ring.end(), 0);
    while (ring.size() > 3) {
      bool clipped = false;
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const int a = ring[(i + ring.size() - 1) % ring.size()];
        const int b = ring[i];
        const int c = ring[(i + 1) % ring.size()];
        const Vec2& A = poly[a];
        const Vec2& B = poly[b];
        const Vec2& C = poly[c];
        if (cross2(B.x - A.x, B.y - A.y, C.x - B.x, C.y - B.y) <= 0.0)
          continue;  // reflex or degenerate corner
        bool ear = true;
        for (int other : ring) {
          if (other == a || other == b || other == c) continue;
          const Vec2& P = poly[other];
          const bool inside =
              cross2(B.x - A.x, B.y - A.y, P.x - A.x, P.y - A.y) >= 0.0 &&
              cross2(C.x - B.x, C.y - B.y, P.x - B.x, P.y - B.y) >= 0.0 &&
              cross2(A.x - C.x, A.y - C.y, P.x - C.x, P.y - C.y) >= 0.0;
          if (inside) {
            ear = false;
            break;
          }
        }
        if (!ear) continue;
        tris.push_back({static_cast<int>(p), {a, b, c}});
        ring.erase(ring.begin() + static_cast<long>(i));
        clipped = true;
        break;
      }
      require(clipped, ErrorCode::BadSurfaceFile,
              "polygon " + std::to_string(p) + " could not be triangulated");
    }
    tris.push_back({static_cast<int>(p), {ring[0], ring[1], ring[2]}});
  }
  return tris;
}

struct Portal {
  int tri = -1;       // triangle on the far side
  int slot = -1;      // its directed edge slot matching this edge reversed
  double tx = 0.0;    // chart translation applied when crossing
  double ty = 0.0;
  int edge_class = -1;
  int sign = +1;      // fingerprint contribution when crossing this way
};

struct DevelopedSearch {
  const PolygonSurface& s;
  std::vector<Tri> tris;
  std::vector<std::array<Portal, 3>> portals;
  int n_edge_classes = 0;
  double R = 0.0, R2 = 0.0;

  std::vector<SaddleConnection>* out = nullptr;
  std::vector<std::string>* warnings = nullptr;
  std::vector<int> fp;
  std::vector<EdgeCrossing> path;
  int start_class = -1;

  explicit DevelopedSearch(const PolygonSurface& surf) : s(surf) {
    tris = triangulate(s);
    // directed edge (poly, a, b) -> (tri, slot)
    std::map<std::array<int, 3>, std::array<int, 2>> directed;
    for (std::size_t t = 0; t < tris.size(); ++t)
      for (int e = 0; e < 3; ++e)
        directed[{tris[t].poly, tris[t].v[e], tris[t].v[(e + 1) % 3]}] = {
            static_cast<int>(t), e};
    portals.resize(tris.size());
    std::map<std::array<int, 2>, int> edge_class_of;  // canonical (tri,slot)
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const Tri& tr = tris[t];
      const auto& poly = s.polygons[tr.poly];
      for (int e = 0; e < 3; ++e) {
        const int a = tr.v[e], b = tr.v[(e + 1) % 3];
        Portal portal;
        auto rev = directed.find({tr.poly, b, a});
        if (rev != directed.end()) {
          portal.tri = rev->second[0];
          portal.slot = rev->second[1];
          portal.tx = 0.0;
          portal.ty = 0.0;
        } else {
          // polygon boundary edge: must be consecutive vertices a -> a+1
          require(b == (a + 1) % static_cast<int>(poly.size()),
                  ErrorCode::InternalInvariant,
                  "triangulation produced a non-edge boundary segment");
          const auto [p2, e2] = s.edge_partner[tr.poly][a];
          auto far = directed.find(
              {p2, e2, (e2 + 1) % static_cast<int>(s.polygons[p2].size())});
          require(far != directed.end(), ErrorCode::InternalInvariant,
                  "partner edge not covered by a triangle");
          portal.tri = far->second[0];
          portal.slot = far->second[1];
          const Vec2& here = poly[a];
          const Vec2& there =
              s.polygons[p2][(e2 + 1) % static_cast<int>(s.polygons[p2].size())];
          portal.tx = here.x - there.x;
          portal.ty = here.y - there.y;
        }
        portals[t][e] = portal;
      }
    }
    // Edge classes: one per unordered crossing pair, canonical side first.
    for (std::size_t t = 0; t < tris.size(); ++t) {
      for (int e = 0; e < 3; ++e) {
        Portal& portal = portals[t][e];
        const std::array<int, 2> self{static_cast<int>(t), e};
        const std::array<int, 2> other{portal.tri, portal.slot};
        if (self < other) {
          portal.edge_class = n_edge_classes++;
          portal.sign = +1;
          edge_class_of[self] = portal.edge_class;
        }
      }
    }
    for (std::size_t t = 0; t < tris.size(); ++t) {
      for (int e = 0; e < 3; ++e) {
        Portal& portal = portals[t][e];
        if (portal.edge_class >= 0) continue;
        portal.edge_class = edge_class_of.at({portal.tri, portal.slot});
        portal.sign = -1;
      }
    }
  }

  // Developed coordinates: raw triangle vertex + accumulated translation.
  struct DevPoint {
    double x, y;
  };
  DevPoint dev(int tri, int corner, double tx, double ty) const {
    const Vec2& raw = s.polygons[tris[tri].poly][tris[tri].v[corner]];
    return {raw.x + tx, raw.y + ty};
  }

  static double seg_dist2(DevPoint a, DevPoint b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0.0 ? -(a.x * vx + a.y * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double px = a.x + t * vx, py = a.y + t * vy;
    return px * px + py * py;
  }

  void near_hit_check(DevPoint c, double bx, double by) {
    const double blen = std::hypot(bx, by);
    if (blen == 0.0) return;
    const double perp = std::abs(cross2(bx / blen, by / blen, c.x, c.y));
    const double along = (bx * c.x + by * c.y) / blen;
    if (perp > 0.0 && perp < 1e-9 && along > 0.0 &&
        c.x * c.x + c.y * c.y <= R2 * (1.0 + 1e-9)) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "near hit: vertex image at (%.17g, %.17g) passes within "
                    "1e-9 of a trace from cone point %d",
                    c.x, c.y, start_class);
      warnings->push_back(buf);
    }
  }

  void emit(DevPoint c, int cone_point) {
    SaddleConnection sc;
    sc.holonomy = Vec2::real(c.x, c.y);
    sc.start_cone_point = start_class;
    sc.end_cone_point = cone_point;
    sc.crossings = path;
    sc.fingerprint = fp;
    out->push_back(std::move(sc));
  }

  // Window of directions (lo, hi), hi always exclusive.
  struct Window {
    double lox, loy, hix, hiy;
    bool lo_open;
    bool empty() const { return cross2(lox, loy, hix, hiy) <= 0.0; }
    bool contains(double dx, double dy) const {
      const double cl = cross2(lox, loy, dx, dy);
      if (lo_open ? cl <= 0.0 : cl < 0.0) return false;
      return cross2(dx, dy, hix, hiy) > 0.0;
    }
  };

  void search(int tri, int entry_slot, double tx, double ty, Window w,
              int depth) {
    require(depth < 100000, ErrorCode::InternalInvariant,
            "development search did not terminate");
    const int copp = (entry_slot + 2) % 3;  // corner opposite the entry edge
    const DevPoint c = dev(tri, copp, tx, ty);
    near_hit_check(c, w.lox, w.loy);
    near_hit_check(c, w.hix, w.hiy);
    const double c2 = c.x * c.x + c.y * c.y;
    if (w.contains(c.x, c.y) && c2 <= R2) {
      const int poly = tris[tri].poly;
      emit(c, s.corners[poly][tris[tri].v[copp]].cone_point);
    }
    // Split the window at the direction of c: the left part continues
    // through edge (entry, copp) = slot entry+2? and the right part through
    // (copp, entry_end). Rays at c are blocked beyond it.
    Window left = w, right = w;
    if (cross2(c.x, c.y, w.hix, w.hiy) > 0.0) {
      left.hix = c.x;
      left.hiy = c.y;
    }
    if (cross2(w.lox, w.loy, c.x, c.y) > 0.0) {
      right.lox = c.x;
      right.loy = c.y;
      right.lo_open = true;
    } else if (cross2(w.lox, w.loy, c.x, c.y) == 0.0) {
      right.lo_open = true;
    }
    // entry edge is slot entry_slot with endpoints (entry_slot, entry_slot+1):
    // A = vertex entry_slot+1? Orientation: we entered crossing the edge whose
    // far-side slot is entry_slot, so the triangle's own directed edge
    // (entry_slot -> entry_slot+1) runs from our B side to A side. The two
    // continuation edges are (entry_slot+1 -> copp) [A..C, left portal] and
    // (copp -> entry_slot) [C..B, right portal].
    const int left_slot = (entry_slot + 1) % 3;
    const int right_slot = copp;
    descend(tri, left_slot, tx, ty, left, depth);
    descend(tri, right_slot, tx, ty, right, depth);
  }

  void descend(int tri, int slot, double tx, double ty, const Window& w,
               int depth) {
    if (w.empty()) return;
    const DevPoint a = dev(tri, slot, tx, ty);
    const DevPoint b = dev(tri, (slot + 1) % 3, tx, ty);
    if (seg_dist2(a, b) > R2) return;
    const Portal& portal = portals[tri][slot];
    fp[portal.edge_class] += portal.sign;
    path.push_back({portal.edge_class,
                    portal.sign > 0 ? Side::Left : Side::Right});
    search(portal.tri, portal.slot, tx + portal.tx, ty + portal.ty, w,
           depth + 1);
    path.pop_back();
    fp[portal.edge_class] -= portal.sign;
  }

  void run(double radius, std::vector<SaddleConnection>* connections,
           std::vector<std::string>* warn) {
    R = radius;
    R2 = radius * radius;
    out = connections;
    warnings = warn;
    fp.assign(n_edge_classes, 0);
    for (std::size_t t = 0; t < tris.size(); ++t) {
      for (int k = 0; k < 3; ++k) {
        const Tri& tr = tris[t];
        start_class = s.corners[tr.poly][tr.v[k]].cone_point;
        const Vec2& origin = s.polygons[tr.poly][tr.v[k]];
        const double tx = -origin.x, ty = -origin.y;
        const DevPoint lo = dev(static_cast<int>(t), (k + 1) % 3, tx, ty);
        const DevPoint hi = dev(static_cast<int>(t), (k + 2) % 3, tx, ty);
        // The corner's first edge is part of the window (closed lo); the
        // second belongs to the next corner around the vertex (open hi).
        if (lo.x * lo.x + lo.y * lo.y <= R2)
          emit(lo, s.corners[tr.poly][tr.v[(k + 1) % 3]].cone_point);
        Window w{lo.x, lo.y, hi.x, hi.y, /*lo_open=*/true};
        descend(static_cast<int>(t), (k + 1) % 3, tx, ty, w,
                0);
      }
    }
  }
};

}  // namespace

Enumeration saddle_connections(const PolygonSurface& s, double R) {
  require(R > 0.0, ErrorCode::RadiusNonPositive,
          "enumeration radius must be positive");
  DevelopedSearch search(s);
  Enumeration out;
  search.run(R, &out.connections, &out.warnings);
  std::sort(out.connections.begin(), out.connections.end(), sc_less);
  return out;
}

HolonomySet holonomy_set(const PolygonSurface& s, double R, bool dedupe) {
  const Enumeration e = saddle_connections(s, R);
  HolonomySet set;
  set.radius = R;
  set.deduped = false;
  for (const SaddleConnection& sc : e.connections) {
    set.vectors.push_back(sc.holonomy);
    set.multiplicities.push_back(1);
  }
  return dedupe ? dedupe_holonomies(set) : set;
}

// ----- systoles -----

namespace {

template <typename Surface>
double systole_impl(const Surface& s) {
  for (double R = 1.0;; R *= 2.0) {
    const Enumeration e = saddle_connections(s, R);
    if (e.connections.empty()) continue;
    double best = R;
    for (const SaddleConnection& sc : e.connections)
      best = std::min(best, norm(sc.holonomy));
    return best;
  }
}

bool same_class(const SaddleConnection& a, const SaddleConnection& b) {
  return a.holonomy == b.holonomy && a.fingerprint == b.fingerprint;
}

bool homologous(const SaddleConnection& a, const SaddleConnection& b) {
  if (same_class(a, b)) return true;
  SaddleConnection nb;
  nb.holonomy = negate(b.holonomy);
  nb.fingerprint.reserve(b.fingerprint.size());
  for (int x : b.fingerprint) nb.fingerprint.push_back(-x);
  return same_class(a, nb);
}

template <typename Surface>
double second_systole_impl(const Surface& s) {
  for (double R = 1.0;; R *= 2.0) {
    const Enumeration e = saddle_connections(s, R);
    if (e.connections.empty()) continue;
    std::size_t shortest = 0;
    for (std::size_t i = 1; i < e.connections.size(); ++i)
      if (norm2(e.connections[i].holonomy) <
          norm2(e.connections[shortest].holonomy))
        shortest = i;
    const SaddleConnection& gamma0 = e.connections[shortest];
    double best = -1.0;
    for (const SaddleConnection& sc : e.connections) {
      if (homologous(sc, gamma0)) continue;
      const double len = norm(sc.holonomy);
      if (best < 0.0 || len < best) best = len;
    }
    if (best >= 0.0) return best;
  }
}

}  // namespace

double systole(const Origami& s) { return systole_impl(s); }
double systole(const PolygonSurface& s) { return systole_impl(s); }
double second_systole(const Origami& s) { return second_systole_impl(s); }
double second_systole(const PolygonSurface& s) { return second_systole_impl(s); }

}  // namespace saddlepairs
