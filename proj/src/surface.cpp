#include "saddlepairs/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include <json.hpp>

#include "saddlepairs/errors.hpp"

namespace saddlepairs {

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm inverse_perm(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

Perm compose_perm(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

std::vector<std::vector<int>> perm_cycles(const Perm& p) {
  std::vector<std::vector<int>> cycles;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cycle;
    int x = static_cast<int>(i);
    while (!seen[x]) {
      seen[x] = true;
      cycle.push_back(x);
      x = p[x];
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

namespace {

void check_perm(const Perm& p, int n, const char* which) {
  require(static_cast<int>(p.size()) == n, ErrorCode::NotAPermutation,
          std::string(which) + " has wrong length");
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    require(p[i] >= 0 && p[i] < n, ErrorCode::NotAPermutation,
            std::string(which) + " image out of range at index " +
                std::to_string(i + 1));
    require(!hit[p[i]], ErrorCode::NotAPermutation,
            std::string(which) + " repeats image " + std::to_string(p[i] + 1));
    hit[p[i]] = true;
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Origami origami_new(int n, Perm h, Perm v, std::string name) {
  require(n > 0, ErrorCode::NotAPermutation, "square count must be positive");
  check_perm(h, n, "h");
  check_perm(v, n, "v");

  // connectivity under <h, v>
  {
    const Perm hi = inverse_perm(h), vi = inverse_perm(v);
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int visited = 1;
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      for (int t : {h[s], v[s], hi[s], vi[s]}) {
        if (!seen[t]) {
          seen[t] = true;
          ++visited;
          stack.push_back(t);
        }
      }
    }
    require(visited == n, ErrorCode::NotTransitive,
            "squares are not connected under h and v");
  }

  Origami o;
  o.n = n;
  o.h = std::move(h);
  o.v = std::move(v);
  o.name = std::move(name);

  // Corner identifications across single edges; orbits are the cone points.
  const Perm hinv = inverse_perm(o.h);
  const Perm vinv = inverse_perm(o.v);
  UnionFind uf(4 * n);
  for (int s = 0; s < n; ++s) {
    uf.unite(4 * s + BL, 4 * hinv[s] + BR);  // same point as left neighbor's BR
    uf.unite(4 * s + BR, 4 * vinv[s] + TR);  // below neighbor's TR
    uf.unite(4 * s + TR, 4 * o.h[s] + TL);   // right neighbor's TL
    uf.unite(4 * s + TL, 4 * o.v[s] + BL);   // above neighbor's BL
  }
  std::vector<int> root_to_class(4 * n, -1);
  o.corner_class.assign(4 * n, -1);
  for (int c = 0; c < 4 * n; ++c) {
    const int r = uf.find(c);
    if (root_to_class[r] < 0) {
      root_to_class[r] = static_cast<int>(o.cone_points.size());
      o.cone_points.push_back({});
    }
    o.corner_class[c] = root_to_class[r];
    o.cone_points[o.corner_class[c]].corners.push_back(c);
  }
  // Cone angle count: each BL corner in the class contributes one full turn.
  for (ConePoint& cp : o.cone_points) {
    int turns = 0;
    for (int c : cp.corners)
      if (c % 4 == BL) ++turns;
    require(turns >= 1, ErrorCode::InternalInvariant, "empty cone point");
    cp.order = turns - 1;
    cp.marked = cp.order == 0;
  }
  const int vertices = static_cast<int>(o.cone_points.size());
  o.genus = (n - vertices + 2) / 2;
  require((n - vertices + 2) % 2 == 0, ErrorCode::InternalInvariant,
          "odd Euler characteristic");
  return o;
}

std::vector<int> zero_orders(const Origami& s) {
  std::vector<int> orders;
  orders.reserve(s.cone_points.size());
  for (const ConePoint& cp : s.cone_points) orders.push_back(cp.order);
  std::sort(orders.rbegin(), orders.rend());
  return orders;
}

double area(const Origami& s) { return static_cast<double>(s.n); }

Origami origami_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::BadSurfaceFile, std::string("invalid JSON: ") + e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    auto read_perm = [&](const char* key) {
      Perm p;
      for (const auto& x : j.at(key)) p.push_back(x.get<int>() - 1);
      return p;
    };
    std::string name = j.value("name", "");
    return origami_new(n, read_perm("h"), read_perm("v"), name);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::BadSurfaceFile,
         std::string("bad origami document: ") + e.what());
  }
}

std::string origami_to_json(const Origami& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n;
  j["h"] = nlohmann::json::array();
  j["v"] = nlohmann::json::array();
  for (int x : s.h) j["h"].push_back(x + 1);
  for (int x : s.v) j["v"].push_back(x + 1);
  j["name"] = s.name;
  return j.dump(2);
}

Origami builtin_origami(const std::string& name) {
  if (name == "torus") return origami_new(1, {0}, {0}, "torus");
  if (name == "l3") return origami_new(3, {1, 0, 2}, {2, 1, 0}, "l3");
  if (name == "cyl2") return origami_new(2, {1, 0}, {0, 1}, "cyl2");
  fail(ErrorCode::BadConfig, "unknown built-in surface '" + name +
                                 "' (have: torus, l3, cyl2)");
}

Mat2i mat_mul(const Mat2i& m, const Mat2i& n) {
  return Mat2i{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
               m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

Vec2 mat_apply(const Mat2i& m, const Vec2& z) {
  if (z.exact) {
    return Vec2::integer(m.a * z.ix + m.b * z.iy, m.c * z.ix + m.d * z.iy);
  }
  return Vec2::real(static_cast<double>(m.a) * z.x + static_cast<double>(m.b) * z.y,
                    static_cast<double>(m.c) * z.x + static_cast<double>(m.d) * z.y);
}

bool is_sl2z(const Mat2i& m) { return m.a * m.d - m.b * m.c == 1; }

Mat2i gen_matrix(Gen g) {
  switch (g) {
    case Gen::S: return Mat2i{0, -1, 1, 0};
    case Gen::Sinv: return Mat2i{0, 1, -1, 0};
    case Gen::T: return Mat2i{1, 1, 0, 1};
    case Gen::Tinv: return Mat2i{1, -1, 0, 1};
  }
  fail(ErrorCode::InternalInvariant, "unhandled generator");
}

Mat2i word_matrix(const std::vector<Gen>& word) {
  Mat2i m;  // identity
  for (Gen g : word) m = mat_mul(gen_matrix(g), m);
  return m;
}

Origami apply_gen(Gen g, const Origami& s) {
  switch (g) {
    case Gen::T:
      return origami_new(s.n, s.h, compose_perm(inverse_perm(s.h), s.v), s.name);
    case Gen::Tinv:
      return origami_new(s.n, s.h, compose_perm(s.h, s.v), s.name);
    case Gen::S:
      return origami_new(s.n, inverse_perm(s.v), s.h, s.name);
    case Gen::Sinv:
      return origami_new(s.n, s.v, inverse_perm(s.h), s.name);
  }
  fail(ErrorCode::InternalInvariant, "unhandled generator");
}

Origami apply_word(const std::vector<Gen>& word, const Origami& s) {
  Origami cur = s;
  for (Gen g : word) cur = apply_gen(g, cur);
  return cur;
}

std::vector<Gen> sl2z_word(const Mat2i& m) {
  require(is_sl2z(m), ErrorCode::NotInSL2Z, "matrix determinant is not 1");
  // Reduce m to the identity by left-multiplying with generator matrices;
  // the word is then the reversed inverses of the reduction letters.
  std::vector<Gen> reduction;
  Mat2i cur = m;
  auto left = [&](Gen g) {
    cur = mat_mul(gen_matrix(g), cur);
    reduction.push_back(g);
  };
  for (int guard = 0; cur.c != 0; ++guard) {
    require(guard < 20000, ErrorCode::InternalInvariant,
            "generator reduction did not terminate");
    if (std::llabs(cur.a) >= std::llabs(cur.c)) {
      // subtract the right multiple of the bottom row from the top row
      const std::int64_t k = cur.a / cur.c;
      for (std::int64_t i = 0; i < std::llabs(k); ++i)
        left(k > 0 ? Gen::Tinv : Gen::T);
    }
    left(Gen::S);  // swap rows (with sign) to keep reducing
  }
  // cur is upper triangular with det 1: diag is (1,1) or (-1,-1).
  if (cur.a == -1) {
    left(Gen::S);
    left(Gen::S);
  }
  require(cur.a == 1 && cur.d == 1, ErrorCode::InternalInvariant,
          "reduction left a non-unipotent matrix");
  const std::int64_t k = cur.b;
  for (std::int64_t i = 0; i < std::llabs(k); ++i)
    left(k > 0 ? Gen::Tinv : Gen::T);

  auto invert = [](Gen g) {
    switch (g) {
      case Gen::S: return Gen::Sinv;
      case Gen::Sinv: return Gen::S;
      case Gen::T: return Gen::Tinv;
      case Gen::Tinv: return Gen::T;
    }
    fail(ErrorCode::InternalInvariant, "unhandled generator");
  };
  // reduction_k o ... o reduction_1 o m = I, so
  // m = inv(reduction_1) o ... o inv(reduction_k); as an application-order
  // word (first letter applied first) that is the reversed inverses.
  std::vector<Gen> word;
  word.reserve(reduction.size());
  for (auto it = reduction.rbegin(); it != reduction.rend(); ++it)
    word.push_back(invert(*it));
  return word;
}

Origami sl2z_act(const Mat2i& m, const Origami& s) {
  return apply_word(sl2z_word(m), s);
}

std::vector<Gen> euclid_word(std::int64_t p, std::int64_t q) {
  require(p != 0 || q != 0, ErrorCode::NotCoprime, "zero direction");
  require(std::gcd(std::llabs(p), std::llabs(q)) == 1, ErrorCode::NotCoprime,
          "direction components must be coprime");
  // Letters act on the running vector: T (p,q)->(p+q,q), Tinv (p,q)->(p-q,q),
  // S (p,q)->(-q,p), Sinv (p,q)->(q,-p).
  std::vector<Gen> word;
  auto push = [&](Gen g) {
    const Mat2i m = gen_matrix(g);
    const std::int64_t np = m.a * p + m.b * q;
    const std::int64_t nq = m.c * p + m.d * q;
    p = np;
    q = nq;
    word.push_back(g);
  };
  for (int guard = 0; !(p == 1 && q == 0); ++guard) {
    require(guard < 20000, ErrorCode::InternalInvariant,
            "direction reduction did not terminate");
    if (q == 0) {
      // p == -1: rotate halfway around
      push(Gen::S);
      push(Gen::S);
    } else if (std::llabs(p) < std::llabs(q)) {
      push(Gen::S);
    } else {
      // shrink |p| by a multiple of q
      push((p > 0) == (q > 0) ? Gen::Tinv : Gen::T);
    }
  }
  return word;
}

std::vector<Cylinder> cylinder_decomposition(const Origami& s, std::int64_t p,
                                             std::int64_t q) {
  const std::vector<Gen> word = euclid_word(p, q);
  const Origami t = apply_word(word, s);
  const double len = std::sqrt(static_cast<double>(p * p + q * q));

  std::vector<Cylinder> result;
  for (const std::vector<int>& cycle : perm_cycles(t.h)) {
    Cylinder cyl;
    cyl.direction = Vec2::integer(p, q);
    cyl.square_count = static_cast<int>(cycle.size());
    cyl.circumference = cycle.size() * len;
    cyl.width = 1.0 / len;
    // Boundary saddle connections: bottom edges of the cycle's squares plus
    // the bottom edges one level up (the cylinder's top), deduplicated.
    std::vector<int> edges;
    for (int sq : cycle) {
      edges.push_back(sq);
      edges.push_back(t.v[sq]);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    cyl.boundary_sc_count = static_cast<int>(edges.size());
    result.push_back(cyl);
  }
  int total = 0;
  for (const Cylinder& c : result) total += c.square_count;
  require(total == s.n, ErrorCode::InternalInvariant,
          "cylinders do not partition the surface");
  return result;
}

// ----- polygon surfaces -----

namespace {

double polygon_signed_area(const std::vector<Vec2>& poly) {
  double sum = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    sum += a.x * b.y - a.y * b.x;
  }
  return sum / 2.0;
}

}  // namespace

PolygonSurface polygon_surface_new(std::vector<std::vector<Vec2>> polygons,
                                   std::vector<std::array<int, 4>> gluing,
                                   std::string name) {
  require(!polygons.empty(), ErrorCode::BadSurfaceFile, "no polygons");
  for (std::size_t p = 0; p < polygons.size(); ++p) {
    require(polygons[p].size() >= 3, ErrorCode::BadSurfaceFile,
            "polygon " + std::to_string(p) + " has fewer than 3 vertices");
    require(polygon_signed_area(polygons[p]) > 0.0, ErrorCode::BadSurfaceFile,
            "polygon " + std::to_string(p) + " must be counterclockwise");
  }

  PolygonSurface s;
  s.polygons = std::move(polygons);
  s.gluing = std::move(gluing);
  s.name = std::move(name);

  // Perfect matching with opposite edge vectors.
  s.edge_partner.resize(s.polygons.size());
  for (std::size_t p = 0; p < s.polygons.size(); ++p)
    s.edge_partner[p].assign(s.polygons[p].size(), {-1, -1});
  auto edge_vec = [&](int p, int e) {
    const auto& poly = s.polygons[p];
    const Vec2& a = poly[e];
    const Vec2& b = poly[(e + 1) % poly.size()];
    return Vec2::real(b.x - a.x, b.y - a.y);
  };
  for (const auto& g : s.gluing) {
    const auto [p1, e1, p2, e2] = g;
    auto valid = [&](int p, int e) {
      return p >= 0 && p < static_cast<int>(s.polygons.size()) && e >= 0 &&
             e < static_cast<int>(s.polygons[p].size());
    };
    require(valid(p1, e1) && valid(p2, e2), ErrorCode::BadSurfaceFile,
            "gluing entry references a missing edge");
    require(s.edge_partner[p1][e1][0] < 0 && s.edge_partner[p2][e2][0] < 0,
            ErrorCode::BadSurfaceFile, "edge glued more than once");
    require(!(p1 == p2 && e1 == e2), ErrorCode::BadSurfaceFile,
            "edge glued to itself");
    const Vec2 u = edge_vec(p1, e1), w = edge_vec(p2, e2);
    require(std::abs(u.x + w.x) <= 1e-9 && std::abs(u.y + w.y) <= 1e-9,
            ErrorCode::BadSurfaceFile,
            "glued edges are not opposite translations");
    s.edge_partner[p1][e1] = {p2, e2};
    s.edge_partner[p2][e2] = {p1, e1};
  }
  for (std::size_t p = 0; p < s.polygons.size(); ++p)
    for (std::size_t e = 0; e < s.polygons[p].size(); ++e)
      require(s.edge_partner[p][e][0] >= 0, ErrorCode::BadSurfaceFile,
              "edge " + std::to_string(e) + " of polygon " + std::to_string(p) +
                  " is unglued");

  // Vertex classes by walking corners around each identified point:
  // crossing the outgoing edge e of corner (p, e) lands on corner
  // (p2, e2 + 1) of the partner edge.
  const std::size_t np = s.polygons.size();
  std::vector<std::vector<int>> corner_ids(np);
  int total_corners = 0;
  for (std::size_t p = 0; p < np; ++p) {
    corner_ids[p].resize(s.polygons[p].size());
    for (std::size_t k = 0; k < s.polygons[p].size(); ++k)
      corner_ids[p][k] = total_corners++;
  }
  s.corners.resize(np);
  std::vector<double> corner_angle(total_corners, 0.0);
  for (std::size_t p = 0; p < np; ++p) {
    const auto& poly = s.polygons[p];
    const std::size_t m = poly.size();
    s.corners[p].resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      const Vec2& prev = poly[(k + m - 1) % m];
      const Vec2& here = poly[k];
      const Vec2& next = poly[(k + 1) % m];
      const double ax = next.x - here.x, ay = next.y - here.y;
      const double bx = prev.x - here.x, by = prev.y - here.y;
      double ang = std::atan2(ax * by - ay * bx, ax * bx + ay * by);
      if (ang <= 0.0) ang += 2.0 * M_PI;  // reflex corners wrap positive
      corner_angle[corner_ids[p][k]] = ang;
      s.corners[p][k].angle = ang;
    }
  }
  std::vector<int> corner_cls(total_corners, -1);
  int n_classes = 0;
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t k = 0; k < s.polygons[p].size(); ++k) {
      if (corner_cls[corner_ids[p][k]] >= 0) continue;
      const int cls = n_classes++;
      double angle_sum = 0.0;
      int cp = static_cast<int>(p), ck = static_cast<int>(k);
      int guard = 0;
      do {
        require(++guard <= total_corners + 1, ErrorCode::BadSurfaceFile,
                "corner walk did not close");
        corner_cls[corner_ids[cp][ck]] = cls;
        angle_sum += corner_angle[corner_ids[cp][ck]];
        const auto [p2, e2] = s.edge_partner[cp][ck];
        cp = p2;
        ck = (e2 + 1) % static_cast<int>(s.polygons[p2].size());
      } while (!(cp == static_cast<int>(p) && ck == static_cast<int>(k)));
      const double turns = angle_sum / (2.0 * M_PI);
      const int k_turns = static_cast<int>(std::lround(turns));
      require(k_turns >= 1 && std::abs(turns - k_turns) <= 1e-6,
              ErrorCode::BadSurfaceFile,
              "vertex class angle " + std::to_string(angle_sum) +
                  " is not a multiple of 2*pi");
      ConePoint pt;
      pt.order = k_turns - 1;
      pt.marked = pt.order == 0;
      s.cone_points.push_back(pt);
    }
  }
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t k = 0; k < s.polygons[p].size(); ++k) {
      s.corners[p][k].cone_point = corner_cls[corner_ids[p][k]];
      s.cone_points[corner_cls[corner_ids[p][k]]].corners.push_back(
          corner_ids[p][k]);
    }
  return s;
}

double area(const PolygonSurface& s) {
  double total = 0.0;
  for (const auto& poly : s.polygons) total += polygon_signed_area(poly);
  return total;
}

PolygonSurface polygon_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::BadSurfaceFile, std::string("invalid JSON: ") + e.what());
  }
  try {
    std::vector<std::vector<Vec2>> polygons;
    for (const auto& poly : j.at("polygons")) {
      std::vector<Vec2> loop;
      for (const auto& pt : poly) {
        auto coord = [&](const nlohmann::json& c) {
          return c.is_string() ? std::stod(c.get<std::string>())
                               : c.get<double>();
        };
        loop.push_back(Vec2::real(coord(pt.at(0)), coord(pt.at(1))));
      }
      polygons.push_back(std::move(loop));
    }
    std::vector<std::array<int, 4>> gluing;
    for (const auto& g : j.at("gluing"))
      gluing.push_back({g.at(0).get<int>(), g.at(1).get<int>(),
                        g.at(2).get<int>(), g.at(3).get<int>()});
    return polygon_surface_new(std::move(polygons), std::move(gluing),
                               j.value("name", ""));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::BadSurfaceFile,
         std::string("bad polygon document: ") + e.what());
  }
}

std::string polygon_to_json(const PolygonSurface& s) {
  nlohmann::ordered_json j;
  j["polygons"] = nlohmann::ordered_json::array();
  for (const auto& poly : s.polygons) {
    nlohmann::ordered_json loop = nlohmann::ordered_json::array();
    for (const Vec2& p : poly) {
      char bx[64], by[64];
      std::snprintf(bx, sizeof bx, "%.17g", p.x);
      std::snprintf(by, sizeof by, "%.17g", p.y);
      loop.push_back({std::string(bx), std::string(by)});
    }
    j["polygons"].push_back(loop);
  }
  j["gluing"] = nlohmann::ordered_json::array();
  for (const auto& g : s.gluing) j["gluing"].push_back({g[0], g[1], g[2], g[3]});
  j["name"] = s.name;
  return j.dump(2);
}

}  // namespace saddlepairs
