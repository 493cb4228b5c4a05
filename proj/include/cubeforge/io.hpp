#pragma once

#include "adc.hpp"
#include "axioms.hpp"
#include "invertibility.hpp"
#include "nerve.hpp"
#include "transfor.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace cubeforge {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

// Printed disks use d x = t - s, flipped ones d x = s - t.
inline const char* d_convention(Orientation o)
{
    return o == Orientation::Printed ? "target-minus-source" : "source-minus-target";
}

inline Orientation parse_d_convention(const std::string& s)
{
    if (s == "target-minus-source")
        return Orientation::Printed;
    if (s == "source-minus-target")
        return Orientation::Flipped;
    throw ParseError("unknown d_convention '" + s + "'");
}

inline json integer_to_json(const Integer& x)
{
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

inline Integer integer_from_json(const json& j)
{
    if (j.is_number_integer())
        return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        try {
            return Integer(s);
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + s + "'");
        }
    }
    throw ParseError("integer expected, got " + j.dump());
}

inline json vec_to_json(const Vec& v)
{
    json a = json::array();
    for (const Integer& x : v)
        a.push_back(integer_to_json(x));
    return a;
}

inline Vec vec_from_json(const json& j, std::size_t len)
{
    if (!j.is_array())
        throw ParseError("coefficient list expected, got " + j.dump());
    if (j.size() != len)
        throw ParseError("coefficient list of length " + std::to_string(j.size()) + ", expected " + std::to_string(len));
    Vec v;
    for (const auto& x : j)
        v.push_back(integer_from_json(x));
    return v;
}

inline json cone_to_json(const Cone& c)
{
    switch (c.kind) {
    case Cone::Kind::NonNeg: return "nonneg";
    case Cone::Kind::Full: return "full";
    case Cone::Kind::Mixed: {
        json f = json::array();
        for (char x : c.free)
            f.push_back(x != 0);
        return json{{"free", f}};
    }
    case Cone::Kind::Generated: {
        json g = json::array();
        for (const Vec& v : c.gens)
            g.push_back(vec_to_json(v));
        return json{{"generators", g}};
    }
    }
    return nullptr;
}

inline Cone cone_from_json(const json& j, std::size_t rank)
{
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        if (s == "nonneg")
            return Cone::nonneg();
        if (s == "full")
            return Cone::full();
        throw ParseError("unknown cone '" + s + "'");
    }
    if (j.is_object() && j.contains("free")) {
        std::vector<char> f;
        for (const auto& x : j.at("free"))
            f.push_back(x.get<bool>() ? 1 : 0);
        if (f.size() != rank)
            throw ParseError("cone mask of the wrong length");
        return Cone::mixed(std::move(f));
    }
    if (j.is_object() && j.contains("generators")) {
        std::vector<Vec> g;
        for (const auto& x : j.at("generators"))
            g.push_back(vec_from_json(x, rank));
        return Cone::generated(std::move(g));
    }
    throw ParseError("bad cone " + j.dump());
}

/**
 * ADC files: {"degrees": [[names]...], "boundary": {"n": rows x cols},
 * "augmentation": [...], "cone": [...], "d_convention": ...}.
 * Parsing checks shapes only; algebraic laws are left to validate().
 */
inline json adc_to_json(const Adc& K)
{
    json j;
    j["degrees"] = K.basis;
    json b = json::object();
    for (int k = 1; k <= K.top_degree(); ++k) {
        json rows = json::array();
        for (std::size_t r = 0; r < K.boundary[k].rows; ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < K.boundary[k].cols; ++c)
                row.push_back(integer_to_json(K.boundary[k](r, c)));
            rows.push_back(row);
        }
        b[std::to_string(k)] = rows;
    }
    j["boundary"] = b;
    j["augmentation"] = vec_to_json(K.augmentation);
    json cones = json::array();
    for (const Cone& c : K.cones)
        cones.push_back(cone_to_json(c));
    j["cone"] = cones;
    j["d_convention"] = d_convention(K.orientation);
    return j;
}

inline Adc adc_from_json(const json& j)
{
    try {
        Adc K;
        K.basis = j.at("degrees").get<std::vector<std::vector<std::string>>>();
        int top = K.top_degree();
        if (top < 0)
            throw ParseError("no degrees");
        K.boundary.assign(top + 1, Matrix());
        const json& b = j.contains("boundary") ? j.at("boundary") : json::object();
        for (auto it = b.begin(); it != b.end(); ++it) {
            int k = 0;
            try {
                k = std::stoi(it.key());
            } catch (const std::exception&) {
                throw ParseError("bad boundary degree '" + it.key() + "'");
            }
            if (k < 1 || k > top)
                throw ParseError("boundary degree " + it.key() + " out of range");
        }
        for (int k = 1; k <= top; ++k) {
            Matrix m(K.rank(k - 1), K.rank(k));
            auto key = std::to_string(k);
            if (b.contains(key)) {
                const json& rows = b.at(key);
                if (rows.size() != m.rows)
                    throw ParseError("boundary " + key + " needs " + std::to_string(m.rows) + " rows");
                for (std::size_t r = 0; r < m.rows; ++r) {
                    Vec row = vec_from_json(rows.at(r), m.cols);
                    for (std::size_t c = 0; c < m.cols; ++c)
                        m(r, c) = row[c];
                }
            }
            K.boundary[k] = std::move(m);
        }
        K.augmentation = vec_from_json(j.at("augmentation"), K.rank(0));
        if (j.contains("cone")) {
            const json& c = j.at("cone");
            if (c.size() != K.basis.size())
                throw ParseError("one cone per degree expected");
            for (int k = 0; k <= top; ++k)
                K.cones.push_back(cone_from_json(c.at(k), K.rank(k)));
        } else {
            K.cones.assign(top + 1, Cone::nonneg());
        }
        if (j.contains("d_convention"))
            K.orientation = parse_d_convention(j.at("d_convention").get<std::string>());
        return K;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed ADC: ") + e.what());
    }
}

inline json parse_json_text(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Adc load_adc(const std::string& path) { return adc_from_json(parse_json_text(read_file(path), path)); }

/**
 * Nerve cells: {"dim": n, "d_convention": ..., "chains": {"(s)": [...]}} with
 * one coefficient list per sign sequence, in the basis order of its degree.
 */
inline json cell_to_json(const CubNerve& m, const NerveCell& a)
{
    json j;
    j["dim"] = a.n;
    j["d_convention"] = d_convention(m.adc().orientation);
    json ch = json::object();
    for (int s = 0; s < seq::pow3(a.n); ++s)
        ch[seq::name(s, a.n)] = vec_to_json(m.at(a, s));
    j["chains"] = ch;
    return j;
}

inline NerveCell cell_from_json(const CubNerve& m, const json& j)
{
    try {
        int n = j.at("dim").get<int>();
        if (n < 0 || n > m.max_dim())
            throw ParseError("cell dimension " + std::to_string(n) + " outside the model");
        const json& ch = j.at("chains");
        if (ch.size() != static_cast<std::size_t>(seq::pow3(n)))
            throw ParseError("one chain per sign sequence expected");
        std::vector<Vec> vals(seq::pow3(n));
        std::vector<char> seen(vals.size(), 0);
        for (auto it = ch.begin(); it != ch.end(); ++it) {
            int s = seq::parse(it.key(), n);
            if (seen[s])
                throw ParseError("sequence " + it.key() + " given twice");
            seen[s] = 1;
            vals[s] = vec_from_json(it.value(), m.adc().rank(seq::shape(n).deg[s]));
        }
        return m.make(n, vals);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed cell: ") + e.what());
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

inline std::string cell_text(const CubNerve& m, const NerveCell& a)
{
    std::ostringstream os;
    const Adc& K = m.adc();
    os << "cell dim " << a.n << "\n";
    for (int s = 0; s < seq::pow3(a.n); ++s) {
        int k = seq::shape(a.n).deg[s];
        Vec x = m.at(a, s);
        os << "  " << seq::name(s, a.n) << " = ";
        bool any = false;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x[j] == 0)
                continue;
            if (any)
                os << (x[j] < 0 ? " - " : " + ");
            else if (x[j] < 0)
                os << "-";
            Integer c = abs(x[j]);
            if (c != 1)
                os << c << " ";
            os << K.basis[k][j];
            any = true;
        }
        if (!any)
            os << "0";
        os << "\n";
    }
    return os.str();
}

inline json axiom_report_to_json(const AxiomReport& r)
{
    json j;
    j["cells"] = r.cells;
    j["instances"] = r.instances;
    j["violation_count"] = r.violation_count;
    json v = json::array();
    for (const auto& x : r.violations)
        v.push_back({{"family", x.family}, {"instance", x.instance}, {"detail", x.detail}});
    j["violations"] = v;
    return j;
}

/**
 * Transfor tables: {"variance", "p", "sample", "entries": [{"id", "source",
 * "image"}]}. Lax p-transfors convert to oplax through rho(n, p), oplax ones
 * back through rho(p, n).
 */
inline json transfor_to_json(const NerveTransfor& F)
{
    json j;
    j["variance"] = variance_str(F.variance());
    j["p"] = F.degree();
    j["sample"] = "declared finite sample of " + std::to_string(F.size()) + " source cells";
    j["pseudo_pairing"] = F.variance() == Variance::Lax ? "rho(n,p)" : "rho(p,n)";
    json e = json::array();
    for (std::size_t k = 0; k < F.size(); ++k)
        e.push_back({{"id", k},
                     {"source", cell_to_json(F.source(), F.cells()[k])},
                     {"image", cell_to_json(F.target(), F.images()[k])}});
    j["entries"] = e;
    return j;
}

inline NerveTransfor transfor_from_json(std::shared_ptr<const CubNerve> C, std::shared_ptr<const CubNerve> D,
                                        const json& j)
{
    try {
        std::string v = j.at("variance").get<std::string>();
        if (v != "lax" && v != "oplax")
            throw ParseError("unknown variance '" + v + "'");
        NerveTransfor F(C, D, j.at("p").get<int>(), v == "lax" ? Variance::Lax : Variance::Oplax);
        for (const auto& e : j.at("entries"))
            F.set(cell_from_json(*C, e.at("source")), cell_from_json(*D, e.at("image")));
        return F;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed transfor table: ") + e.what());
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

} // namespace cubeforge
