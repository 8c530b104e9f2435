#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace spun {

// Vertex permutation stored as the images of 0,1,2,3.
using Perm = std::array<int, 4>;

int parity(const Perm& p);  // +1 even, -1 odd
Perm compose(const Perm& a, const Perm& b);  // (a o b)[i] = a[b[i]]
Perm inverse(const Perm& p);
std::string to_string(const Perm& p);

// Quad types and shape labels share one index:
//   0: q   ~ edges 01/23 ~ z
//   1: q'  ~ edges 03/12 ~ z'
//   2: q'' ~ edges 02/13 ~ z''
int edge_label(int a, int b);
// The six edges in a fixed order: 01 02 03 12 13 23.
extern const std::array<std::pair<int, int>, 6> kTetEdges;
int edge_index(int a, int b);

// Face `f` of a tetrahedron is the face opposite vertex f; it is glued to
// face perm[f] of tetrahedron `tet`, vertex v going to perm[v].
struct Gluing {
    int tet = -1;
    Perm perm{0, 1, 2, 3};
};

struct Triangulation {
    std::string name;
    std::vector<std::array<Gluing, 4>> gluings;
    // Optional reference numbering of vertex solutions carried by the document.
    std::vector<std::vector<long>> vertex_numbering;

    int size() const { return static_cast<int>(gluings.size()); }
    const Gluing& gluing(int tet, int face) const { return gluings[static_cast<std::size_t>(tet)][static_cast<std::size_t>(face)]; }
};

// One step of the walk around an edge.  The walk enters tetrahedron `tet`
// through the face opposite c and leaves through the face opposite d;
// (a,b,c,d) is always an even permutation.
struct EdgeCorner {
    int tet;
    int a, b, c, d;
    int label() const { return edge_label(a, b); }
};

struct EdgeClass {
    int id = 0;
    std::vector<EdgeCorner> corners;
    int degree() const { return static_cast<int>(corners.size()); }
};

struct CuspClass {
    int id = 0;
    std::vector<std::pair<int, int>> vertices;  // (tet, vertex), sorted
    int link_euler = 0;
};

struct Symmetry {
    std::vector<int> tet_perm;
    std::vector<Perm> corner_perms;
};

Triangulation parse_triangulation(const std::string& text);
Triangulation load_triangulation(const std::filesystem::path& path);
std::string to_json(const Triangulation& t);

std::vector<EdgeClass> trace_edge_classes(const Triangulation& t);
std::vector<CuspClass> trace_cusp_classes(const Triangulation& t);

// Throws NonTorusLink when some cusp link is not a torus.
void require_torus_cusps(const Triangulation& t);

std::vector<Symmetry> symmetries(const Triangulation& t);
bool is_symmetry(const Triangulation& t, const Symmetry& s);
Symmetry compose(const Symmetry& a, const Symmetry& b);  // a after b
Symmetry identity_symmetry(int n);
bool operator==(const Symmetry& a, const Symmetry& b);

// Image of cusp class c under s, as an index into trace_cusp_classes(t).
std::vector<int> cusp_permutation(const Triangulation& t, const Symmetry& s);
// Symmetries fixing every cusp class.
std::vector<Symmetry> cusp_stabilizer(const Triangulation& t, const std::vector<Symmetry>& group);

// perm[3t+k] is the image of quad k of tetrahedron t.  Quad coordinates are
// unsigned, so orientation-reversing symmetries permute them without sign.
std::vector<int> induced_quad_permutation(const Symmetry& s);

}  // namespace spun
