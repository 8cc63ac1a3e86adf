#pragma once
// Curve-jet transport through blow-ups and staged tracking of the exceptional orbits.

#include "lfr/poly.hpp"
#include "lfr/projgeom.hpp"
#include "lfr/spectral.hpp"

#include <array>
#include <string>
#include <vector>

namespace lfr {

struct HigherOrderTangency : std::domain_error {
    using std::domain_error::domain_error;
};

using Curve = std::array<UPoly, 3>;  // homogeneous polynomial curve t -> (c0(t), c1(t), c2(t))

struct Germ {
    Vec3 base, tangent;  // t -> base + t * tangent
};

// Canonical g-jet of a smooth curve germ. In the affine chart x_chart = 1 the curve reads
// x_param = u0 + s, x_other = w[0] + w[1] s + ... + w[g] s^g.
struct Jet {
    int gen = 0;
    int chart = 0;
    int param = 1;
    int other = 2;
    FieldElem u0;
    std::vector<FieldElem> w;
};

Jet canonical_jet(const Curve& c, int gen);
// same, but forced into a given chart and parameter; throws if impossible
Jet canonical_jet_in(const Curve& c, int gen, int chart, int param);
Curve jet_curve(const Jet& j);
bool jet_matches(const Jet& j, const Curve& c);

struct SurfacePoint {
    Jet jet;
    int center = -1;  // registry index of the blow-up center this point lies over

    bool is_fiber() const { return jet.gen > 0; }
    ProjPoint base() const;
    // fiber coordinate as a point of P^1, affine coordinates in increasing index order
    std::array<FieldElem, 2> dir() const;
    size_t height_bits() const;
    std::string str() const;
};

bool same_point(const SurfacePoint& a, const SurfacePoint& b);

struct BlowupRegistry {
    struct Center {
        SurfacePoint pt;
        int stage = 0;
        int orbit = -1;
        int index = -1;
    };
    std::vector<Center> centers;

    int add(const SurfacePoint& p, int stage, int orbit = -1, int index = -1);
    int find(const SurfacePoint& p) const;
    // gen-0 ancestor
    int root(int idx) const;
    // lift a curve germ to the deepest registered level
    SurfacePoint resolve(const Curve& c) const;
};

SurfacePoint base_point(const ProjPoint& p);

struct TransportResult {
    SurfacePoint point;
    Germ image;
};

// image of the curve germ base + t*tangent under f, lifted through the registry
TransportResult germ_transport(const ParamPair& p, const BlowupRegistry& reg, const Germ& g);
// image of a surface point (independent of the representative curve, else Indeterminate);
// inverse = true transports under f^-1
SurfacePoint transport_point(const ParamPair& p, const BlowupRegistry& reg, const SurfacePoint& P,
                             bool inverse = false);

enum class TerminalKind { HitIndeterminacy, NonSingularTruncated, PendingCollapse };

struct Terminal {
    TerminalKind kind = TerminalKind::NonSingularTruncated;
    int index = 0;  // epsilon index, iteration cap, or exceptional line index
    std::string note;
};

struct OrbitRecord {
    int origin = 0;
    std::vector<SurfacePoint> points;
    Terminal terminal;
    int stage = -1;  // registration stage when singular
    bool singular() const { return terminal.kind == TerminalKind::HitIndeterminacy; }
};

struct OrbitList {
    std::vector<int> orbits;   // chain order
    std::vector<int> lengths;
    bool closed = false;
};

struct OrbitStructure {
    std::vector<OrbitList> lists;
    std::array<int, 3> tau{-1, -1, -1};
    std::vector<int> openStarts() const;
    OrbitListSpec spec() const;
    std::string str() const;
};

struct TrackOptions {
    int maxIter = 0;             // 0: 256 for exact, 64 for approximate parameters
    size_t heightBits = 6000;    // exact only: stop when coordinates outgrow this
};

struct TrackResult {
    OrbitStructure structure;
    std::array<OrbitRecord, 3> orbits;
    BlowupRegistry registry;
};

TrackResult track_exceptional_orbits(const ParamPair& p, TrackOptions opt = {});

PullbackInput pullback_input(const ParamPair& p, const TrackResult& t);

GrowthClass classify_growth(const ParamPair& p, TrackOptions opt = {});

}  // namespace lfr
