#include "flagspec/json_io.hpp"

#include <json.hpp>

#include <limits>

namespace flagspec {

namespace {

using nlohmann::json;

json int_to_json(const Int& x) {
    if (x.fits_slong_p()) return json(static_cast<std::int64_t>(x.get_si()));
    return json(x.get_str());
}

Int json_to_int(const json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return Int(static_cast<unsigned long>(j.get<std::uint64_t>()));
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw validation_error("not an integer: " + j.dump());
        }
    }
    throw validation_error("expected an integer, got " + j.dump());
}

json matrix_to_json(const IntegerMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntegerMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                               const std::string& what) {
    if (!j.is_array()) throw validation_error(what + ": expected an array of rows");
    if (rows > 0 && j.size() != rows)
        throw validation_error(what + ": expected " + std::to_string(rows) + " rows");
    IntegerMatrix m(rows, cols);
    for (std::size_t i = 0; i < j.size() && i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw validation_error(what + ": row " + std::to_string(i) + " must have " +
                                   std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = json_to_int(row[c]);
    }
    return m;
}

json parse_document(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw validation_error("malformed JSON document");
    return j;
}

json complex_to_json_obj(const BoundedComplex& c) {
    json j;
    j["lo"] = c.lo;
    j["hi"] = c.hi();
    j["dims"] = c.dims;
    json diffs = json::array();
    for (const auto& d : c.diffs) diffs.push_back(matrix_to_json(d));
    j["differentials"] = std::move(diffs);
    return j;
}

BoundedComplex complex_from_json_obj(const json& j) {
    if (!j.is_object() || !j.contains("lo") || !j.contains("dims"))
        throw validation_error("complex: need lo and dims");
    int lo = j.at("lo").get<int>();
    std::vector<long> dims;
    for (const auto& d : j.at("dims")) dims.push_back(static_cast<long>(json_to_int(d).get_si()));
    if (j.contains("hi")) {
        int hi = j.at("hi").get<int>();
        if (hi - lo + 1 != static_cast<int>(dims.size()))
            throw validation_error("complex: hi does not match the dims length");
    }
    std::vector<IntegerMatrix> diffs;
    json jd = j.value("differentials", json::array());
    std::size_t expect = dims.empty() ? 0 : dims.size() - 1;
    if (jd.size() != expect)
        throw validation_error("complex: expected " + std::to_string(expect) + " differentials");
    for (std::size_t k = 0; k < jd.size(); ++k)
        diffs.push_back(matrix_from_json(jd[k], static_cast<std::size_t>(dims[k]),
                                         static_cast<std::size_t>(dims[k + 1]),
                                         "complex differential " + std::to_string(k)));
    return make_complex(lo, std::move(dims), std::move(diffs));
}

std::string subset_key(Subset s) {
    std::string key = "[";
    auto els = subset_elements(s);
    for (std::size_t i = 0; i < els.size(); ++i) key += (i ? "," : "") + std::to_string(els[i]);
    return key + "]";
}

Subset subset_from_key(const std::string& key, int m) {
    json arr = json::parse(key, nullptr, false);
    if (arr.is_discarded() || !arr.is_array())
        throw validation_error("cube: bad subset key '" + key + "'");
    Subset s = 0;
    for (const auto& e : arr) {
        int x = e.get<int>();
        if (x < 1 || x > m) throw validation_error("cube: subset element out of range in " + key);
        s |= 1u << (x - 1);
    }
    return s;
}

}  // namespace

std::string complex_to_json(const BoundedComplex& c, bool pretty) {
    return complex_to_json_obj(c).dump(pretty ? 2 : -1);
}

BoundedComplex complex_from_json(const std::string& text) {
    return complex_from_json_obj(parse_document(text));
}

std::string cube_to_json(const CubeOfComplexes& k, bool pretty) {
    json j;
    j["m"] = k.m;
    json entries;
    for (std::size_t s = 0; s < k.entries.size(); ++s)
        entries[subset_key(static_cast<Subset>(s))] = complex_to_json_obj(k.entries[s]);
    j["entries"] = std::move(entries);
    json maps;
    for (const auto& [key, parts] : k.maps) {
        json arr = json::array();
        for (const auto& p : parts) arr.push_back(matrix_to_json(p));
        maps[subset_key(key.first) + "->" + subset_key(key.second)] = std::move(arr);
    }
    j["maps"] = std::move(maps);
    return j.dump(pretty ? 2 : -1);
}

CubeOfComplexes cube_from_json(const std::string& text) {
    json j = parse_document(text);
    if (!j.is_object() || !j.contains("m") || !j.contains("entries"))
        throw validation_error("cube: need m and entries");
    int m = j.at("m").get<int>();
    if (m < 1 || m > 10) throw validation_error("cube: m out of range");
    std::size_t count = std::size_t{1} << m;
    std::vector<BoundedComplex> entries(count);
    std::vector<bool> present(count, false);
    for (const auto& [key, val] : j.at("entries").items()) {
        Subset s = subset_from_key(key, m);
        entries[s] = complex_from_json_obj(val);
        present[s] = true;
    }
    for (std::size_t s = 0; s < count; ++s)
        if (!present[s])
            throw validation_error("cube: missing entry " + subset_key(static_cast<Subset>(s)));

    std::map<std::pair<Subset, Subset>, std::vector<IntegerMatrix>> maps;
    json maps_json = j.value("maps", json::object());
    for (const auto& [key, val] : maps_json.items()) {
        auto arrow = key.find("->");
        if (arrow == std::string::npos)
            throw validation_error("cube: bad map key '" + key + "'");
        Subset from = subset_from_key(key.substr(0, arrow), m);
        Subset to = subset_from_key(key.substr(arrow + 2), m);
        const BoundedComplex& src = entries[from];
        const BoundedComplex& dst = entries[to];
        if (!val.is_array() || val.size() != src.dims.size())
            throw validation_error("cube: map " + key + " needs one matrix per source degree");
        std::vector<IntegerMatrix> parts;
        for (std::size_t t = 0; t < val.size(); ++t) {
            int deg = src.lo + static_cast<int>(t);
            parts.push_back(matrix_from_json(val[t], static_cast<std::size_t>(dst.dim(deg)),
                                             static_cast<std::size_t>(src.dim(deg)),
                                             "cube map " + key + " degree " + std::to_string(deg)));
        }
        maps[{from, to}] = std::move(parts);
    }
    return make_cube(m, std::move(entries), std::move(maps));
}

RootDatum root_datum_from_json(const std::string& text) {
    json j = parse_document(text);
    if (!j.is_object() || !j.contains("type") || !j.contains("rank"))
        throw validation_error("root datum: need type and rank");
    std::string type = j.at("type").get<std::string>();
    if (type.size() != 1) throw validation_error("root datum: unknown type '" + type + "'");
    DynkinType t = dynkin_type_from_char(type[0]);
    int rank = j.at("rank").get<int>();
    if (j.contains("lattice_basis")) {
        IntegerMatrix basis = matrix_from_json(j.at("lattice_basis"),
                                               static_cast<std::size_t>(rank),
                                               static_cast<std::size_t>(rank), "lattice_basis");
        return build_root_datum(t, rank, basis);
    }
    std::string lattice = j.value("lattice", "simply_connected");
    if (lattice == "simply_connected") return build_root_datum(t, rank, LatticeKind::simply_connected);
    if (lattice == "adjoint") return build_root_datum(t, rank, LatticeKind::adjoint);
    throw validation_error("root datum: unknown lattice '" + lattice + "'");
}

namespace {

json presentation_to_json(const AbelianPresentation& p) {
    json j;
    j["rank"] = p.rank;
    json t = json::array();
    for (const Int& x : p.torsion) t.push_back(int_to_json(x));
    j["torsion"] = std::move(t);
    return j;
}

}  // namespace

std::string graded_quotient_to_json(const GradedQuotient& q, bool pretty) {
    json degrees = json::array();
    for (std::size_t d = 0; d < q.degrees.size(); ++d) {
        json e = presentation_to_json(q.degrees[d]);
        e["d"] = d;
        degrees.push_back(std::move(e));
    }
    json j;
    j["degrees"] = std::move(degrees);
    j["generators"] = q.generator_words;
    return j.dump(pretty ? 2 : -1);
}

std::string k0_quotient_to_json(const K0Quotient& q, bool pretty) {
    json j;
    j["total"] = presentation_to_json(q.total);
    json graded = json::array();
    for (const auto& g : q.gamma_graded) graded.push_back(presentation_to_json(g));
    j["gamma_graded"] = std::move(graded);
    return j.dump(pretty ? 2 : -1);
}

std::string page_to_json(const SpectralSequencePage& page, bool pretty) {
    json j;
    j["r"] = page.r;
    json groups = json::array();
    for (const auto& [key, pres] : page.groups) {
        json e = presentation_to_json(pres);
        e["p"] = key.p;
        e["q"] = key.q;
        groups.push_back(std::move(e));
    }
    j["groups"] = std::move(groups);
    json diffs = json::array();
    for (const auto& [key, mat] : page.differentials) {
        json e;
        e["p"] = key.p;
        e["q"] = key.q;
        e["matrix"] = matrix_to_json(mat);
        diffs.push_back(std::move(e));
    }
    j["differentials"] = std::move(diffs);
    return j.dump(pretty ? 2 : -1);
}

std::string convergence_to_json(const ConvergenceReport& report, bool pretty) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        json e;
        e["total_degree"] = r.total_degree;
        e["homological_degree"] = r.homological_degree;
        e["e_rank_sum"] = r.e_rank_sum;
        e["e_torsion_order"] = int_to_json(r.e_torsion_order);
        e["h_rank"] = r.h_rank;
        e["h_torsion_order"] = int_to_json(r.h_torsion_order);
        e["graded_torsion_order"] = int_to_json(r.graded_torsion_order);
        e["match"] = r.match;
        rows.push_back(std::move(e));
    }
    json j;
    j["pass"] = report.pass;
    j["rows"] = std::move(rows);
    return j.dump(pretty ? 2 : -1);
}

std::string torsion_index_to_json(const TorsionIndexResult& t, bool pretty) {
    json per = json::array();
    for (std::size_t d = 0; d < t.per_degree.size(); ++d) {
        if (t.finite[d])
            per.push_back(int_to_json(t.per_degree[d]));
        else
            per.push_back("infinite");
    }
    json j;
    j["per_degree"] = std::move(per);
    j["tau"] = int_to_json(t.tau);
    return j.dump(pretty ? 2 : -1);
}

std::string j_invariant_to_json(const JInvariantResult& jr, bool pretty) {
    json j;
    if (jr.success) {
        j["r"] = jr.r;
        j["degrees"] = jr.degrees;
        j["j"] = jr.exponents;
    } else {
        j["shape_failure"] = true;
        j["reason"] = jr.failure_reason;
        j["dims"] = jr.dim_table;
    }
    return j.dump(pretty ? 2 : -1);
}

std::string tits_indexes_to_json(const K0FlagRing& r, const TitsIndexes& t, bool pretty) {
    json j;
    j["diagonal"] = t.diagonal;
    if (t.diagonal) {
        json m;
        for (std::size_t w = 0; w < t.m.size(); ++w) m[word_string(r.weyl[w])] = int_to_json(t.m[w]);
        j["m"] = std::move(m);
    } else {
        j["hermite"] = matrix_to_json(t.hermite);
    }
    return j.dump(pretty ? 2 : -1);
}

ImageSublattice image_from_json(const std::string& text, const ChowFlagRing* chow,
                                const K0FlagRing* k0) {
    json j = parse_document(text);
    if (!j.is_object() || !j.contains("carrier"))
        throw validation_error("image: need a carrier field ('chow' or 'k0')");
    std::string carrier = j.at("carrier").get<std::string>();
    ImageSublattice img;
    if (carrier == "chow") {
        if (!chow) throw validation_error("image: chow carrier needs a chow ring context");
        img.carrier = ImageSublattice::Carrier::chow;
        for (const auto& block : j.value("generators", json::array())) {
            int d = block.at("degree").get<int>();
            if (d < 0 || d > chow->top_degree())
                throw validation_error("image: degree out of range");
            const json& classes = block.at("classes");
            std::size_t rows = static_cast<std::size_t>(chow->rank_by_degree[static_cast<std::size_t>(d)]);
            IntegerMatrix mat(rows, classes.size());
            for (std::size_t c = 0; c < classes.size(); ++c) {
                const json& cls = classes[c];
                if (!cls.is_array() || cls.size() != rows)
                    throw validation_error("image: class vector of wrong length at degree " +
                                           std::to_string(d));
                for (std::size_t i = 0; i < rows; ++i) mat.at(i, c) = json_to_int(cls[i]);
            }
            img.graded_generators[d] = std::move(mat);
        }
        return img;
    }
    if (carrier == "k0") {
        if (!k0) throw validation_error("image: k0 carrier needs a k0 ring context");
        img.carrier = ImageSublattice::Carrier::k0;
        std::size_t n = static_cast<std::size_t>(k0->rank());
        if (j.contains("m")) {
            std::map<std::string, std::size_t> by_word;
            for (std::size_t w = 0; w < k0->weyl.size(); ++w) by_word[word_string(k0->weyl[w])] = w;
            std::vector<Int> m(n, Int(0));
            for (const auto& [word, val] : j.at("m").items()) {
                auto it = by_word.find(word);
                if (it == by_word.end())
                    throw validation_error("image: unknown Weyl word '" + word + "'");
                m[it->second] = json_to_int(val);
            }
            for (const Int& x : m)
                if (x <= 0) throw validation_error("image: every Tits index must be positive");
            img.k0_generators = IntegerMatrix(n, n);
            for (std::size_t i = 0; i < n; ++i) img.k0_generators.at(i, i) = m[i];
            return img;
        }
        const json& classes = j.at("classes");
        IntegerMatrix mat(n, classes.size());
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const json& cls = classes[c];
            if (!cls.is_array() || cls.size() != n)
                throw validation_error("image: class vector of wrong length");
            for (std::size_t i = 0; i < n; ++i) mat.at(i, c) = json_to_int(cls[i]);
        }
        img.k0_generators = std::move(mat);
        return img;
    }
    throw validation_error("image: unknown carrier '" + carrier + "'");
}

std::string chow_ring_summary_json(const ChowFlagRing& r, bool pretty) {
    json j;
    j["type"] = r.rd.name();
    j["weyl_order"] = r.weyl.size();
    j["ranks_by_degree"] = r.rank_by_degree;
    j["positive_roots"] = r.roots.size();
    json words = json::array();
    for (const auto& w : r.weyl) words.push_back(word_string(w));
    j["schubert_basis"] = std::move(words);
    return j.dump(pretty ? 2 : -1);
}

std::string k0_ring_summary_json(const K0FlagRing& r, bool pretty) {
    json j;
    j["type"] = r.rd.name();
    j["rank"] = r.rank();
    j["basis_verified"] = true;
    j["has_multiplication_table"] = r.has_table;
    json weights;
    for (std::size_t w = 0; w < r.weyl.size(); ++w) {
        json coords = json::array();
        for (const Int& x : r.steinberg_weights[w]) coords.push_back(int_to_json(x));
        weights[word_string(r.weyl[w])] = std::move(coords);
    }
    j["steinberg_weights"] = std::move(weights);
    return j.dump(pretty ? 2 : -1);
}

}  // namespace flagspec
