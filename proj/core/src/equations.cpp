#include "spun/equations.hpp"

#include "spun/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace spun {

using json = nlohmann::json;

ExponentVector ExponentVector::zero(int n) { return ExponentVector{IntRow(static_cast<std::size_t>(3 * n), 0), 0}; }

ExponentVector& ExponentVector::operator+=(const ExponentVector& o) {
    if (entries.size() != o.entries.size()) throw Error(ErrorKind::DimensionMismatch, "exponent vectors differ in length");
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += o.entries[i];
    sign_exp = (sign_exp + o.sign_exp) % 2;
    return *this;
}

ExponentVector ExponentVector::operator*(long k) const {
    ExponentVector out = *this;
    for (auto& x : out.entries) x *= k;
    out.sign_exp = static_cast<int>(((sign_exp * k) % 2 + 2) % 2);
    return out;
}

SupportSet SupportSet::from(std::vector<IntRow> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return SupportSet{std::move(pts)};
}

std::complex<double> ShapeAssignment::symbol(int tet, int rotation) const {
    const auto w = z.at(static_cast<std::size_t>(tet));
    switch (rotation) {
    case 0: return w;
    case 1: return 1.0 / (1.0 - w);
    default: return (w - 1.0) / w;
    }
}

std::array<SupportSet, 3> parameter_support_triple(int n, int tet) {
    const std::size_t d = static_cast<std::size_t>(3 * n);
    const std::size_t base = static_cast<std::size_t>(3 * tet);
    auto e = [&](std::initializer_list<int> ks) {
        IntRow v(d, 0);
        for (int k : ks) v[base + static_cast<std::size_t>(k)] += 1;
        return v;
    };
    // p = z(1-z'') - 1,  p' = z'(1-z) - 1,  p'' = z''(1-z') - 1
    return {SupportSet::from({e({0}), e({0, 2}), IntRow(d, 0)}),
            SupportSet::from({e({1}), e({1, 0}), IntRow(d, 0)}),
            SupportSet::from({e({2}), e({2, 1}), IntRow(d, 0)})};
}

GluingSystem edge_rows(const Triangulation& t) {
    GluingSystem g;
    g.n = t.size();
    for (const auto& cls : trace_edge_classes(t)) {
        auto row = ExponentVector::zero(g.n);
        for (const auto& c : cls.corners) row.entries[static_cast<std::size_t>(3 * c.tet + c.label())] += 1;
        g.edge_rows.push_back(std::move(row));
    }
    for (int i = 0; i < g.n; ++i) g.param_supports.push_back(parameter_support_triple(g.n, i));
    return g;
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedDocument, what); }

IntRow int_row(const json& j, const std::string& what) {
    if (!j.is_array()) malformed(what + " must be an array");
    IntRow out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) malformed(what + " entries must be integers");
        out.push_back(x.get<long>());
    }
    return out;
}

int parse_rotation(const json& j) {
    if (j.is_number_integer()) {
        int r = j.get<int>();
        if (r < 0 || r > 2) malformed("shape_map rotation must be 0, 1 or 2");
        return r;
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "z") return 0;
        if (s == "z'") return 1;
        if (s == "z''") return 2;
    }
    malformed("shape_map symbol must be one of z, z', z''");
}

CurveKind parse_kind(const std::string& s) {
    if (s == "meridian") return CurveKind::Meridian;
    if (s == "longitude") return CurveKind::Longitude;
    return CurveKind::Other;
}

std::vector<NZRow> parse_rows(const json& doc, long& n) {
    if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) malformed("NZ document needs a rows array");
    std::vector<NZRow> rows;
    for (const auto& r : doc["rows"]) {
        if (!r.is_object()) malformed("NZ row must be an object");
        NZRow row;
        if (r.contains("label")) {
            if (!r["label"].is_string()) malformed("NZ row label must be a string");
            row.label = r["label"].get<std::string>();
        }
        if (!r.contains("a") || !r.contains("b") || !r.contains("c")) malformed("NZ row '" + row.label + "' needs a, b and c");
        row.a = int_row(r["a"], "a");
        row.b = int_row(r["b"], "b");
        if (!r["c"].is_number_integer()) malformed("NZ row '" + row.label + "': c must be an integer");
        row.c = r["c"].get<long>();
        if (r.contains("kind")) {
            if (!r["kind"].is_string()) malformed("NZ row kind must be a string");
            row.kind = r["kind"].get<std::string>();
        } else {
            row.kind = (!row.label.empty() && row.label[0] == 'e') ? "edge" : "peripheral";
        }
        if (n < 0) n = static_cast<long>(row.a.size());
        if (static_cast<long>(row.a.size()) != n || static_cast<long>(row.b.size()) != n)
            malformed("NZ row '" + row.label + "' does not have 2n+1 entries");
        rows.push_back(std::move(row));
    }
    return rows;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

std::vector<NZRow> ingest_nz(const std::string& text) {
    auto doc = parse_json(text);
    long n = -1;
    if (doc.is_object() && doc.contains("num_tetrahedra")) {
        if (!doc["num_tetrahedra"].is_number_integer()) malformed("num_tetrahedra must be an integer");
        n = doc["num_tetrahedra"].get<long>();
    }
    return parse_rows(doc, n);
}

NZDocument parse_nz_document(const std::string& text) {
    auto doc = parse_json(text);
    long n = -1;
    if (doc.is_object() && doc.contains("num_tetrahedra")) {
        if (!doc["num_tetrahedra"].is_number_integer()) malformed("num_tetrahedra must be an integer");
        n = doc["num_tetrahedra"].get<long>();
    }
    NZDocument out;
    out.rows = parse_rows(doc, n);
    if (n < 0) malformed("cannot determine the number of tetrahedra");
    out.n = static_cast<int>(n);

    if (doc.contains("shape_map")) {
        const auto& sm = doc["shape_map"];
        if (!sm.is_array() || static_cast<long>(sm.size()) != n) malformed("shape_map must list one slot per NZ variable");
        std::vector<bool> hit(static_cast<std::size_t>(n), false);
        for (const auto& s : sm) {
            if (!s.is_object() || !s.contains("tet") || !s.contains("symbol")) malformed("shape_map entries need tet and symbol");
            ShapeSlot slot;
            if (!s["tet"].is_number_integer()) malformed("shape_map tet must be an integer");
            slot.tet = s["tet"].get<int>();
            if (slot.tet < 0 || slot.tet >= n || hit[static_cast<std::size_t>(slot.tet)])
                malformed("shape_map must be a bijection onto the tetrahedra");
            hit[static_cast<std::size_t>(slot.tet)] = true;
            slot.rotation = parse_rotation(s["symbol"]);
            out.shape_map.push_back(slot);
        }
    }

    if (doc.contains("peripherals")) {
        std::map<std::string, const NZRow*> by_label;
        for (const auto& r : out.rows) by_label[r.label] = &r;
        for (const auto& p : doc["peripherals"]) {
            if (!p.is_object() || !p.contains("name") || !p.contains("cusp") || !p.contains("product"))
                malformed("peripheral entries need name, cusp and product");
            PeripheralCurve c;
            c.name = p["name"].get<std::string>();
            if (!p["cusp"].is_number_integer()) malformed("peripheral cusp must be an integer");
            c.cusp = p["cusp"].get<int>();
            c.kind = p.contains("kind") ? parse_kind(p["kind"].get<std::string>()) : CurveKind::Other;
            c.row = ExponentVector::zero(out.n);
            for (const auto& term : p["product"]) {
                if (!term.is_object() || !term.contains("row") || !term.contains("power"))
                    malformed("product terms need row and power");
                const auto label = term["row"].get<std::string>();
                auto it = by_label.find(label);
                if (it == by_label.end()) malformed("peripheral '" + c.name + "' refers to unknown row '" + label + "'");
                c.row += nz_to_exponent(*it->second, out.shape_map, out.n) * term["power"].get<long>();
            }
            out.peripherals.push_back(std::move(c));
        }
    }
    return out;
}

NZDocument load_nz_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_nz_document(ss.str());
}

ExponentVector nz_to_exponent(const NZRow& r) { return nz_to_exponent(r, {}, static_cast<int>(r.a.size())); }

ExponentVector nz_to_exponent(const NZRow& r, const std::vector<ShapeSlot>& shape_map, int n) {
    auto out = ExponentVector::zero(n);
    for (std::size_t k = 0; k < r.a.size(); ++k) {
        const ShapeSlot slot = shape_map.empty() ? ShapeSlot{static_cast<int>(k), 0} : shape_map[k];
        const auto base = static_cast<std::size_t>(3 * slot.tet);
        // 1 - z^(r) = 1 / z^(r+1) for each of the three symbols.
        out.entries[base + static_cast<std::size_t>(slot.rotation)] += r.a[k];
        out.entries[base + static_cast<std::size_t>((slot.rotation + 1) % 3)] -= r.b[k];
    }
    out.sign_exp = static_cast<int>(((r.c % 2) + 2) % 2);
    return out;
}

void attach_peripherals(GluingSystem& g, const NZDocument& doc) {
    if (doc.n != g.n) throw Error(ErrorKind::DimensionMismatch, "NZ document and triangulation differ in size");
    g.peripheral_rows = doc.peripherals;
}

IntMatrix cn_matrix(int n) {
    static const long c1[3][3] = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
    const auto d = static_cast<std::size_t>(3 * n);
    IntMatrix m(d, IntRow(d, 0));
    for (std::size_t t = 0; t < static_cast<std::size_t>(n); ++t)
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) m[3 * t + r][3 * t + c] = c1[r][c];
    return m;
}

IntRow row_times_matrix(const IntRow& u, const IntMatrix& m) {
    IntRow out(m.empty() ? 0 : m.front().size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += u[i] * m[i][j];
    }
    return out;
}

IntMatrix qmatching_from_A(const GluingSystem& g) {
    const auto c = cn_matrix(g.n);
    IntMatrix b;
    for (const auto& row : g.edge_rows) b.push_back(row_times_matrix(row.entries, c));
    return b;
}

IntMatrix qmatching_direct(const Triangulation& t) {
    IntMatrix b;
    const auto d = static_cast<std::size_t>(3 * t.size());
    for (const auto& cls : trace_edge_classes(t)) {
        IntRow row(d, 0);
        for (const auto& c : cls.corners) {
            // Crossing the corner, the quad separating {a,d} from {b,c} climbs
            // towards the edge and the one separating {a,c} from {b,d} falls.
            row[static_cast<std::size_t>(3 * c.tet + edge_label(c.a, c.d))] += 1;
            row[static_cast<std::size_t>(3 * c.tet + edge_label(c.a, c.c))] -= 1;
        }
        b.push_back(std::move(row));
    }
    return b;
}

SlopeFunctional slope_functional(const PeripheralCurve& c) {
    const int n = static_cast<int>(c.row.entries.size() / 3);
    SlopeFunctional f{c.name, row_times_matrix(c.row.entries, cn_matrix(n))};
    for (auto& x : f.coeffs) x *= kSlopeSign;
    return f;
}

std::vector<SlopeFunctional> slope_functionals(const std::vector<PeripheralCurve>& rows) {
    std::vector<SlopeFunctional> out;
    for (const auto& r : rows) out.push_back(slope_functional(r));
    return out;
}

std::vector<SlopeFunctional> slope_functionals(const std::vector<ExponentVector>& rows) {
    std::vector<SlopeFunctional> out;
    for (const auto& r : rows) out.push_back(slope_functional(PeripheralCurve{"", 0, CurveKind::Other, r}));
    return out;
}

std::complex<double> evaluate_row(const ExponentVector& r, const ShapeAssignment& z) {
    for (std::size_t i = 0; i < z.z.size(); ++i) {
        if (std::abs(z.z[i]) < kDegenerateShapeTolerance || std::abs(z.z[i] - 1.0) < kDegenerateShapeTolerance)
            throw Error(ErrorKind::DegenerateShape, "shape of tetrahedron " + std::to_string(i) + " is 0 or 1");
    }
    if (!r.entries.empty() && r.entries.size() != 3 * z.z.size())
        throw Error(ErrorKind::DimensionMismatch, "exponent vector and shape assignment differ in size");
    std::complex<double> value = r.sign_exp ? -1.0 : 1.0;
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        long e = r.entries[i];
        if (e == 0) continue;
        const auto s = z.symbol(static_cast<int>(i / 3), static_cast<int>(i % 3));
        const auto base = e > 0 ? s : 1.0 / s;
        for (long k = 0; k < std::abs(e); ++k) value *= base;
    }
    return value;
}

}  // namespace spun
