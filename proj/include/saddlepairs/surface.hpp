#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "saddlepairs/planar.hpp"

namespace saddlepairs {

// Permutation of {0..n-1} stored as the image table.
using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm inverse_perm(const Perm& p);
// (a o b)(x) = a[b[x]]
Perm compose_perm(const Perm& a, const Perm& b);
std::vector<std::vector<int>> perm_cycles(const Perm& p);

// Corner slots of a unit square, counterclockwise from the bottom-left.
enum Corner : int { BL = 0, BR = 1, TR = 2, TL = 3 };

struct ConePoint {
  int order = 0;             // cone angle 2*pi*(order+1)
  bool marked = false;       // order 0: regular point kept as an endpoint
  std::vector<int> corners;  // flat corner ids 4*square + Corner
};

// Square-tiled surface: n unit squares, h maps a square to its right
// neighbor, v to its top neighbor. Exact-arithmetic backbone of the suite.
struct Origami {
  int n = 0;
  Perm h, v;
  std::string name;
  // derived on construction:
  std::vector<int> corner_class;        // size 4n, cone point id per corner
  std::vector<ConePoint> cone_points;
  int genus = 0;
};

// Validates and derives cone-point data. Throws NotAPermutation /
// NotTransitive. Permutations are 0-based image tables.
Origami origami_new(int n, Perm h, Perm v, std::string name = "");

// Cone-point orders including marked points, sorted descending.
std::vector<int> zero_orders(const Origami& s);

double area(const Origami& s);

// JSON document {"n": int, "h": [...], "v": [...], "name": string} with
// 1-indexed permutation images.
Origami origami_from_json(const std::string& text);
std::string origami_to_json(const Origami& s);

// Built-in suite surfaces: "torus" (n=1), "l3" (L-shaped, three squares,
// one cone point of order 2), "cyl2" (two-square torus, two marked points).
Origami builtin_origami(const std::string& name);

// ----- integer linear maps and the SL(2,Z) action -----

struct Mat2i {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
};

Mat2i mat_mul(const Mat2i& m, const Mat2i& n);
Vec2 mat_apply(const Mat2i& m, const Vec2& z);
bool is_sl2z(const Mat2i& m);

// Generator letters, applied to a surface left to right (word[0] first).
enum class Gen { S, Sinv, T, Tinv };

Mat2i gen_matrix(Gen g);
// Product g_k * ... * g_1 for word = [g_1 .. g_k]: the matrix acting on
// holonomy when the word is applied to the surface in order.
Mat2i word_matrix(const std::vector<Gen>& word);

// One-generator action on (h, v); composition convention (f o g)(x) = f(g(x)):
//   T: (h, v) -> (h, h^-1 o v)     T^-1: (h, v) -> (h, h o v)
//   S: (h, v) -> (v^-1, h)         S^-1: (h, v) -> (v, h^-1)
// Fixed by the holonomy equivariance property (tested): the holonomy set of
// the transformed surface is the matrix image of the original holonomy set.
Origami apply_gen(Gen g, const Origami& s);
Origami apply_word(const std::vector<Gen>& word, const Origami& s);

// Decomposes m into a generator word with word_matrix(word) == m.
// Throws NotInSL2Z when det != 1.
std::vector<Gen> sl2z_word(const Mat2i& m);
Origami sl2z_act(const Mat2i& m, const Origami& s);

// Word w with word_matrix(w) * (p, q)^T = (1, 0)^T for coprime (p, q).
std::vector<Gen> euclid_word(std::int64_t p, std::int64_t q);

// ----- cylinders -----

struct Cylinder {
  Vec2 direction;        // primitive integer direction
  double circumference = 0.0;
  double width = 0.0;
  int square_count = 0;  // area of the cylinder (unit squares)
  int boundary_sc_count = 0;
};

// Cylinder decomposition in the coprime direction (p, q): conjugate the
// surface so the direction becomes horizontal, then read cycles of h.
// Throws NotCoprime for non-primitive or zero directions.
std::vector<Cylinder> cylinder_decomposition(const Origami& s, std::int64_t p,
                                             std::int64_t q);

// ----- polygon-gluing surfaces -----

struct PolygonCorner {
  int cone_point = -1;   // vertex class id
  double angle = 0.0;    // interior angle at this corner
};

// Translation surface from counterclockwise polygons with translation
// gluings. Directed edge e of polygon p runs from vertex e to vertex e+1;
// gluing entries [p, e, p2, e2] identify edges with opposite edge vectors.
struct PolygonSurface {
  std::vector<std::vector<Vec2>> polygons;
  std::vector<std::array<int, 4>> gluing;
  std::string name;
  // derived:
  std::vector<std::vector<PolygonCorner>> corners;  // per polygon vertex
  std::vector<ConePoint> cone_points;               // order = angle/2pi - 1
  std::vector<std::vector<std::array<int, 2>>> edge_partner;  // per directed edge
};

// Validates gluing (perfect matching, opposite edge vectors within 1e-9,
// vertex angles multiples of 2*pi within 1e-6). Throws BadSurfaceFile.
PolygonSurface polygon_surface_new(std::vector<std::vector<Vec2>> polygons,
                                   std::vector<std::array<int, 4>> gluing,
                                   std::string name = "");

double area(const PolygonSurface& s);

// JSON document {"polygons": [[[x,y],...]], "gluing": [[p,e,p2,e2],...]}
// with coordinates as decimal strings (numbers also accepted), 0-indexed.
PolygonSurface polygon_from_json(const std::string& text);
std::string polygon_to_json(const PolygonSurface& s);

}  // namespace saddlepairs
