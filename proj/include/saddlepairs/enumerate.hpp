#pragma once

#include <string>
#include <vector>

#include "saddlepairs/planar.hpp"
#include "saddlepairs/surface.hpp"

namespace saddlepairs {

// Edge sides through which a segment enters a square (origami tracing) or a
// triangle (polygon tracing, mapped onto Left/Right by crossing sign).
enum class Side { Left, Right, Bottom, Top };

struct EdgeCrossing {
  int cell = 0;  // square entered (origami) or edge class crossed (polygon)
  Side side = Side::Left;
};

// Oriented flat geodesic between cone points with none in its interior.
struct SaddleConnection {
  Vec2 holonomy;
  int start_cone_point = -1;
  int end_cone_point = -1;
  std::vector<EdgeCrossing> crossings;
  // Signed transversal crossing counts on labeled edge classes. Origami:
  // 2n entries, first the n left-edge classes (positive rightward), then the
  // n bottom-edge classes (positive upward). Polygon: one per edge class.
  std::vector<int> fingerprint;
};

struct HolonomySet {
  double radius = 0.0;
  bool deduped = false;
  std::vector<Vec2> vectors;
  std::vector<long long> multiplicities;  // parallel to vectors
};

struct Enumeration {
  std::vector<SaddleConnection> connections;
  // Near-miss diagnostics from float tracing (polygon surfaces only): a
  // trace passed within 1e-9 of a vertex without hitting it.
  std::vector<std::string> warnings;
};

// Complete list of saddle connections with |holonomy| <= R, sorted by
// (holonomy.x, holonomy.y, start, end, fingerprint). Origami enumeration is
// exact integer arithmetic. Throws RadiusNonPositive.
Enumeration saddle_connections(const Origami& s, double R);
Enumeration saddle_connections(const PolygonSurface& s, double R);

// Holonomy projection; dedupe=true collapses equal holonomies into one entry
// with its multiplicity (the holonomy set proper), dedupe=false keeps one
// entry per saddle connection with multiplicity 1.
HolonomySet holonomy_set(const Origami& s, double R, bool dedupe = true);
HolonomySet holonomy_set(const PolygonSurface& s, double R, bool dedupe = true);
HolonomySet dedupe_holonomies(const HolonomySet& set);

// Shortest saddle-connection length, via doubling-radius search.
double systole(const Origami& s);
double systole(const PolygonSurface& s);

// Shortest length among saddle connections not homologous to a fixed
// shortest one. Two connections are judged homologous when they agree in
// holonomy and fingerprint as unoriented classes: (hol, fp) equal to either
// (hol0, fp0) or (-hol0, -fp0).
double second_systole(const Origami& s);
double second_systole(const PolygonSurface& s);

}  // namespace saddlepairs
