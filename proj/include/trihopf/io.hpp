#ifndef TRIHOPF_IO_HPP
#define TRIHOPF_IO_HPP

#include <sstream>

#include <json.hpp>

#include "trihopf/fundamental.hpp"

namespace trihopf {

using json = nlohmann::json;

inline constexpr const char* kFormatTag = "trihopf-structures-v1";

struct FieldDescriptor {
    bool is_rational = true;
    std::uint64_t p = 0;
};

inline FieldDescriptor parse_field_descriptor(const json& doc) {
    if (!doc.contains("field") || !doc["field"].is_object())
        throw parse_error("missing 'field' object");
    const json& f = doc["field"];
    for (auto it = f.begin(); it != f.end(); ++it)
        if (it.key() != "kind" && it.key() != "p")
            throw parse_error("unknown key 'field." + it.key() + "'");
    std::string kind = f.value("kind", "");
    if (kind == "Q") {
        if (f.contains("p")) throw parse_error("'field.p' is only valid for kind Fp");
        return {true, 0};
    }
    if (kind == "Fp") {
        if (!f.contains("p") || !f["p"].is_number_unsigned())
            throw parse_error("field kind Fp needs a positive integer 'p'");
        std::uint64_t p = f["p"].get<std::uint64_t>();
        if (!is_prime_u64(p)) throw parse_error("'field.p' = " + std::to_string(p) + " is not prime");
        return {false, p};
    }
    throw parse_error("unknown field kind '" + kind + "' (expected Q or Fp)");
}

// In-memory contents of a structure file. Sections are optional but ordered by
// dependency: algebra needs hopf, module and phi need algebra.
template <Field F>
struct StructureBundle {
    FieldDescriptor field;
    HopfPtr<F> hopf;                                  // may be empty
    ComodulePtr<F> algebra;                           // may be empty
    std::optional<PoissonTriLieHopfModule<F>> module; // needs algebra
    std::optional<Matrix<F>> phi;                     // H → A entries
};

namespace io_detail {

inline void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw parse_error("unknown key '" + where + "." + it.key() + "'");
    }
}

inline VectorSpace parse_space(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw parse_error("'" + where + "' must be an object");
    reject_unknown(obj, {"labels"}, where);
    if (!obj.contains("labels") || !obj["labels"].is_array())
        throw parse_error("'" + where + ".labels' must be an array of strings");
    std::vector<std::string> labels;
    for (const auto& l : obj["labels"]) {
        if (!l.is_string()) throw parse_error("'" + where + ".labels' must contain strings");
        labels.push_back(l.get<std::string>());
    }
    const int dim = static_cast<int>(labels.size());
    try {
        return VectorSpace(dim, std::move(labels));
    } catch (const std::invalid_argument& e) {
        throw parse_error(where + ": " + e.what());
    }
}

template <Field F>
using ScalarParser = std::function<F(const std::string&)>;

inline std::vector<std::string> split_entry(const json& cell, const std::string& where) {
    if (!cell.is_string()) throw parse_error("'" + where + "' entries must be strings");
    std::vector<std::string> parts;
    std::istringstream ss(cell.get<std::string>());
    std::string tok;
    while (ss >> tok) parts.push_back(tok);
    return parts;
}

inline int entry_index(const std::string& tok, int bound, const std::string& where) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error(where + ": indices must be nonnegative integers, got '" + tok + "'");
    long long v = 0;
    for (char c : tok) {
        v = v * 10 + (c - '0');
        if (v > bound) break;
    }
    if (v >= bound)
        throw parse_error(where + ": index " + tok + " out of range (dim " +
                          std::to_string(bound) + ")");
    return static_cast<int>(v);
}

template <Field F>
SparseTensor<F> parse_tensor(const json& arr, std::vector<int> in_dims, int out_dim,
                             const ScalarParser<F>& scalar, const std::string& where) {
    if (!arr.is_array()) throw parse_error("'" + where + "' must be an array of entries");
    SparseTensor<F> t(in_dims, out_dim);
    const std::size_t width = in_dims.size() + 2;
    for (const auto& e : arr) {
        std::vector<std::string> parts = split_entry(e, where);
        if (parts.size() != width)
            throw parse_error("'" + where + "' entries must have " + std::to_string(width) +
                              " fields ('indices... coefficient')");
        std::vector<int> in;
        for (std::size_t s = 0; s < in_dims.size(); ++s)
            in.push_back(entry_index(parts[s], in_dims[s], where));
        int out = entry_index(parts[in_dims.size()], out_dim, where);
        F c = scalar(parts[width - 1]);
        t.add_entry(std::span<const int>(in.data(), in.size()), out, c);
    }
    t.normalize();
    return t;
}

// Entries [in, out..., "c"] for a linear map dom → cod with a flat codomain
// written as several indices (e.g. comul: [i, j, k, "c"]).
template <Field F>
Matrix<F> parse_map_entries(const json& arr, int dom, const std::vector<int>& cod_dims,
                            const ScalarParser<F>& scalar, const std::string& where) {
    if (!arr.is_array()) throw parse_error("'" + where + "' must be an array of entries");
    int cod = 1;
    for (int d : cod_dims) cod *= d;
    Matrix<F> m(cod, dom);
    const std::size_t width = 1 + cod_dims.size() + 1;
    for (const auto& e : arr) {
        std::vector<std::string> parts = split_entry(e, where);
        if (parts.size() != width)
            throw parse_error("'" + where + "' entries must have " + std::to_string(width) +
                              " fields ('indices... coefficient')");
        int col = entry_index(parts[0], dom, where);
        int row = 0;
        for (std::size_t s = 0; s < cod_dims.size(); ++s)
            row = row * cod_dims[s] + entry_index(parts[1 + s], cod_dims[s], where);
        m.at(row, col) += scalar(parts[width - 1]);
    }
    return m;
}

template <Field F>
Vec<F> parse_vector_entries(const json& arr, int dim, const ScalarParser<F>& scalar,
                            const std::string& where) {
    if (!arr.is_array()) throw parse_error("'" + where + "' must be an array of entries");
    Vec<F> v(dim);
    for (const auto& e : arr) {
        std::vector<std::string> parts = split_entry(e, where);
        if (parts.size() != 2)
            throw parse_error("'" + where + "' entries must be 'index coefficient' pairs");
        int i = entry_index(parts[0], dim, where);
        v[i] += scalar(parts[1]);
    }
    return v;
}

} // namespace io_detail

template <Field F>
StructureBundle<F> parse_bundle(const json& doc, const io_detail::ScalarParser<F>& scalar) {
    using namespace io_detail;
    if (!doc.is_object()) throw parse_error("structure file must be a JSON object");
    reject_unknown(doc, {"format", "field", "hopf", "algebra", "module", "phi"}, "$");
    if (!doc.contains("format") || doc["format"] != kFormatTag)
        throw parse_error(std::string("missing or unsupported 'format' (expected \"") + kFormatTag +
                          "\")");
    StructureBundle<F> out;
    out.field = parse_field_descriptor(doc);

    if (doc.contains("hopf")) {
        const json& h = doc["hopf"];
        reject_unknown(h, {"space", "mul", "unit", "comul", "counit", "antipode", "antipode_inv"},
                       "hopf");
        VectorSpace hs = parse_space(h.value("space", json::object()), "hopf.space");
        const int n = hs.dim;
        if (!h.contains("mul") || !h.contains("unit") || !h.contains("comul") ||
            !h.contains("counit") || !h.contains("antipode"))
            throw parse_error("hopf needs mul, unit, comul, counit and antipode");
        SparseTensor<F> mul = parse_tensor<F>(h["mul"], {n, n}, n, scalar, "hopf.mul");
        Vec<F> unit = parse_vector_entries<F>(h["unit"], n, scalar, "hopf.unit");
        Matrix<F> comul = parse_map_entries<F>(h["comul"], n, {n, n}, scalar, "hopf.comul");
        Matrix<F> counit = parse_map_entries<F>(h["counit"], n, {1}, scalar, "hopf.counit");
        Matrix<F> antipode = parse_map_entries<F>(h["antipode"], n, {n}, scalar, "hopf.antipode");
        HopfStructure<F> hopf;
        try {
            hopf.algebra = AlgebraStructure<F>(hs, std::move(mul), std::move(unit));
            hopf.comul = LinearMap<F>(hs, tensor_space(hs, hs), std::move(comul));
            hopf.counit = LinearMap<F>(hs, VectorSpace(1, {"F"}), std::move(counit));
            hopf.antipode = LinearMap<F>(hs, hs, antipode);
            if (h.contains("antipode_inv")) {
                hopf.antipode_inv = LinearMap<F>(
                    hs, hs, parse_map_entries<F>(h["antipode_inv"], n, {n}, scalar,
                                                 "hopf.antipode_inv"));
            } else {
                F one = hopf.algebra.field_one();
                auto inv = antipode.inverse(one);
                if (!inv) throw parse_error("antipode is singular and no antipode_inv given");
                hopf.antipode_inv = LinearMap<F>(hs, hs, std::move(*inv));
            }
        } catch (const std::invalid_argument& e) {
            throw parse_error(std::string("hopf: ") + e.what());
        }
        out.hopf = std::make_shared<const HopfStructure<F>>(std::move(hopf));
    }

    if (doc.contains("algebra")) {
        if (!out.hopf) throw parse_error("'algebra' needs a 'hopf' section");
        const json& a = doc["algebra"];
        reject_unknown(a, {"space", "mul", "unit", "bracket", "coaction"}, "algebra");
        VectorSpace as = parse_space(a.value("space", json::object()), "algebra.space");
        const int n = as.dim;
        const int hd = out.hopf->dim();
        if (!a.contains("mul") || !a.contains("unit") || !a.contains("bracket") ||
            !a.contains("coaction"))
            throw parse_error("algebra needs mul, unit, bracket and coaction");
        try {
            auto alg = std::make_shared<ComodulePoissonTriLieAlgebra<F>>();
            alg->base.algebra = AlgebraStructure<F>(
                as, parse_tensor<F>(a["mul"], {n, n}, n, scalar, "algebra.mul"),
                parse_vector_entries<F>(a["unit"], n, scalar, "algebra.unit"));
            alg->base.bracket = TriBracket<F>(
                as, parse_tensor<F>(a["bracket"], {n, n, n}, n, scalar, "algebra.bracket"));
            alg->hopf = out.hopf;
            alg->coaction = Coaction<F>(
                as, out.hopf,
                LinearMap<F>(as, tensor_space(as, out.hopf->space()),
                             parse_map_entries<F>(a["coaction"], n, {n, hd}, scalar,
                                                  "algebra.coaction")));
            out.algebra = std::move(alg);
        } catch (const std::invalid_argument& e) {
            throw parse_error(std::string("algebra: ") + e.what());
        }
    }

    if (doc.contains("module")) {
        if (!out.algebra) throw parse_error("'module' needs an 'algebra' section");
        const json& m = doc["module"];
        reject_unknown(m, {"space", "action", "tri_action", "coaction"}, "module");
        VectorSpace ms = parse_space(m.value("space", json::object()), "module.space");
        const int nm = ms.dim;
        const int na = out.algebra->space().dim;
        const int hd = out.hopf->dim();
        if (!m.contains("action") || !m.contains("tri_action") || !m.contains("coaction"))
            throw parse_error("module needs action, tri_action and coaction");
        try {
            PoissonTriLieHopfModule<F> mod;
            mod.algebra = out.algebra;
            mod.space = ms;
            mod.a_action = parse_tensor<F>(m["action"], {na, nm}, nm, scalar, "module.action");
            mod.tri_action = TriLieModuleAction<F>(
                out.algebra->space(), ms,
                parse_tensor<F>(m["tri_action"], {na, na, nm}, nm, scalar, "module.tri_action"));
            mod.coaction = Coaction<F>(
                ms, out.hopf,
                LinearMap<F>(ms, tensor_space(ms, out.hopf->space()),
                             parse_map_entries<F>(m["coaction"], nm, {nm, hd}, scalar,
                                                  "module.coaction")));
            out.module = std::move(mod);
        } catch (const std::invalid_argument& e) {
            throw parse_error(std::string("module: ") + e.what());
        }
    }

    if (doc.contains("phi")) {
        if (!out.algebra) throw parse_error("'phi' needs an 'algebra' section");
        out.phi = io_detail::parse_map_entries<F>(doc["phi"], out.hopf->dim(),
                                                  {out.algebra->space().dim}, scalar, "phi");
    }
    return out;
}

// --- serialization (canonical form) ------------------------------------------

namespace io_detail {

inline json space_to_json(const VectorSpace& s) {
    json out = json::object();
    out["labels"] = s.labels;
    return out;
}

template <Field F>
json tensor_to_json(const SparseTensor<F>& t) {
    json arr = json::array();
    SparseTensor<F> c = t;
    c.normalize();
    for (const auto& e : c.entries()) {
        std::string row;
        for (int s = 0; s < c.arity() + 1; ++s) row += std::to_string(e.idx[s]) + " ";
        row += e.coeff.str();
        arr.push_back(std::move(row));
    }
    return arr;
}

// Entries [col, split(row)..., coeff] sorted by (col, row).
template <Field F>
json map_to_json(const Matrix<F>& m, const std::vector<int>& cod_dims) {
    json arr = json::array();
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) {
            if (m.at(i, j).is_zero()) continue;
            std::string row = std::to_string(j);
            int rest = i;
            std::vector<int> parts(cod_dims.size());
            for (int s = static_cast<int>(cod_dims.size()) - 1; s >= 0; --s) {
                parts[s] = rest % cod_dims[s];
                rest /= cod_dims[s];
            }
            for (int p : parts) row += " " + std::to_string(p);
            row += " " + m.at(i, j).str();
            arr.push_back(std::move(row));
        }
    return arr;
}

template <Field F>
json vector_to_json(const Vec<F>& v) {
    json arr = json::array();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) arr.push_back(std::to_string(i) + " " + v[i].str());
    return arr;
}

} // namespace io_detail

template <Field F>
json bundle_to_json(const StructureBundle<F>& b) {
    using namespace io_detail;
    json doc = json::object();
    doc["format"] = kFormatTag;
    if (b.field.is_rational)
        doc["field"] = json{{"kind", "Q"}};
    else
        doc["field"] = json{{"kind", "Fp"}, {"p", b.field.p}};
    if (b.hopf) {
        const HopfStructure<F>& h = *b.hopf;
        const int n = h.dim();
        json out = json::object();
        out["space"] = space_to_json(h.space());
        out["mul"] = tensor_to_json(h.algebra.mul);
        out["unit"] = vector_to_json(h.algebra.unit);
        out["comul"] = map_to_json(h.comul.matrix, {n, n});
        out["counit"] = map_to_json(h.counit.matrix, {1});
        out["antipode"] = map_to_json(h.antipode.matrix, {n});
        out["antipode_inv"] = map_to_json(h.antipode_inv.matrix, {n});
        doc["hopf"] = std::move(out);
    }
    if (b.algebra) {
        const ComodulePoissonTriLieAlgebra<F>& a = *b.algebra;
        const int n = a.space().dim;
        json out = json::object();
        out["space"] = space_to_json(a.space());
        out["mul"] = tensor_to_json(a.base.algebra.mul);
        out["unit"] = vector_to_json(a.base.algebra.unit);
        out["bracket"] = tensor_to_json(a.base.bracket.bracket);
        out["coaction"] = map_to_json(a.coaction.rho.matrix, {n, b.hopf->dim()});
        doc["algebra"] = std::move(out);
    }
    if (b.module) {
        const PoissonTriLieHopfModule<F>& m = *b.module;
        json out = json::object();
        out["space"] = space_to_json(m.space);
        out["action"] = tensor_to_json(m.a_action);
        out["tri_action"] = tensor_to_json(m.tri_action.action);
        out["coaction"] = map_to_json(m.coaction.rho.matrix, {m.space.dim, b.hopf->dim()});
        doc["module"] = std::move(out);
    }
    if (b.phi) doc["phi"] = map_to_json(*b.phi, {b.algebra->space().dim});
    return doc;
}

inline std::string canonical_dump(const json& doc) { return doc.dump(2) + "\n"; }

} // namespace trihopf

#endif
