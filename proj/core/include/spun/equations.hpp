#pragma once

#include "spun/tri.hpp"

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

namespace spun {

using IntRow = std::vector<long>;
using IntMatrix = std::vector<IntRow>;

// Exponents over (z_0, z'_0, z''_0, z_1, ...), times (-1)^sign_exp.
struct ExponentVector {
    IntRow entries;
    int sign_exp = 0;  // 0 or 1

    static ExponentVector zero(int n);
    ExponentVector& operator+=(const ExponentVector& o);
    ExponentVector operator*(long k) const;
    bool operator==(const ExponentVector& o) const = default;
};

// Finite set of exponent points, duplicates removed, sorted.
struct SupportSet {
    std::vector<IntRow> points;
    static SupportSet from(std::vector<IntRow> pts);
};

// Neumann-Zagier style row: prod z_k^{a_k} (1-z_k)^{b_k}, sign column c.
struct NZRow {
    std::string label;
    std::string kind;  // "edge" or "peripheral"
    IntRow a, b;
    long c = 0;
};

// The NZ variable z_k is symbol `rotation` (0: z, 1: z', 2: z'') of
// tetrahedron `tet` in the triangulation's own labelling.
struct ShapeSlot {
    int tet = 0;
    int rotation = 0;
};

enum class CurveKind { Meridian, Longitude, Other };

struct PeripheralCurve {
    std::string name;
    int cusp = 0;
    CurveKind kind = CurveKind::Other;
    ExponentVector row;
};

struct NZDocument {
    int n = 0;
    std::vector<NZRow> rows;
    std::vector<ShapeSlot> shape_map;  // identity when absent
    std::vector<PeripheralCurve> peripherals;
};

struct GluingSystem {
    int n = 0;
    std::vector<ExponentVector> edge_rows;
    std::vector<PeripheralCurve> peripheral_rows;
    // Per tetrahedron, the supports of p, p', p''.
    std::vector<std::array<SupportSet, 3>> param_supports;
};

struct SlopeFunctional {
    std::string name;
    IntRow coeffs;
};

// z'_i = 1/(1-z_i), z''_i = (z_i-1)/z_i are derived on demand.
struct ShapeAssignment {
    std::vector<std::complex<double>> z;
    std::complex<double> symbol(int tet, int rotation) const;
};

inline constexpr double kEvalTolerance = 1e-9;
inline constexpr double kDegenerateShapeTolerance = 1e-12;

GluingSystem edge_rows(const Triangulation& t);

// Parameter equation supports of one tetrahedron among n.
std::array<SupportSet, 3> parameter_support_triple(int n, int tet);

std::vector<NZRow> ingest_nz(const std::string& text);
NZDocument parse_nz_document(const std::string& text);
NZDocument load_nz_document(const std::filesystem::path& path);

ExponentVector nz_to_exponent(const NZRow& r);
ExponentVector nz_to_exponent(const NZRow& r, const std::vector<ShapeSlot>& shape_map, int n);

// Attaches the document's peripheral curves to a gluing system.
void attach_peripherals(GluingSystem& g, const NZDocument& doc);

IntMatrix cn_matrix(int n);
IntMatrix qmatching_from_A(const GluingSystem& g);
IntMatrix qmatching_direct(const Triangulation& t);

// Sign of the frozen slope convention: nu = kSlopeSign * u . C_n.
inline constexpr long kSlopeSign = -1;
SlopeFunctional slope_functional(const PeripheralCurve& c);
std::vector<SlopeFunctional> slope_functionals(const std::vector<PeripheralCurve>& rows);
std::vector<SlopeFunctional> slope_functionals(const std::vector<ExponentVector>& rows);

std::complex<double> evaluate_row(const ExponentVector& r, const ShapeAssignment& z);

IntRow row_times_matrix(const IntRow& u, const IntMatrix& m);

}  // namespace spun
