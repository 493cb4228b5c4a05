#include <cubeforge/cubeforge.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <regex>
#include <string>

using namespace cubeforge;

namespace {

struct Config {
    std::string adc_path;
    std::string builtin;
    std::string cell_path;
    std::optional<int> dim;
    std::string dims;
    int bound = 1;
    std::uint64_t seed = 1;
    std::string orientation;
    std::string format = "text";
    int random = 0;
    std::string kind = "R";
    int index = 1;
    std::optional<int> phi, psi_i;
    bool full_fold = false;
    int p = 1;
    int full_from = 1;
    std::string emit = "report";
    std::string action, word, perm;
    int n = 0, m = 0;
};

struct UsageError : Error {
    using Error::Error;
};

// Named complexes: disk:N, cube:N, optionally with ",full>=K".
Adc builtin_adc(const std::string& name, Orientation o)
{
    static const std::regex re(R"((disk|cube):(\d)(,full>=(\d))?)");
    std::smatch mt;
    if (!std::regex_match(name, mt, re))
        throw UsageError("unknown builtin complex '" + name + "' (expected disk:N or cube:N, optionally ,full>=K)");
    int n = std::stoi(mt[2]);
    Adc K = mt[1] == "disk" ? disk(n, o) : cube(n);
    K.orientation = o;
    if (mt[4].matched)
        K = with_full_cones(std::move(K), std::stoi(mt[4]));
    return K;
}

Adc load_input(const Config& c)
{
    if (c.adc_path.empty() == c.builtin.empty())
        throw UsageError("exactly one of --adc and --builtin is required");
    Orientation o = c.orientation.empty() ? Orientation::Printed : parse_orientation(c.orientation);
    if (!c.builtin.empty())
        return builtin_adc(c.builtin, o);
    Adc K = load_adc(c.adc_path);
    if (!c.orientation.empty())
        K.orientation = o;
    return K;
}

std::pair<int, int> dim_range(const Config& c, int lo, int hi)
{
    if (c.dim && !c.dims.empty())
        throw UsageError("--dim and --dims are exclusive");
    if (c.dim)
        return {*c.dim, *c.dim};
    if (c.dims.empty())
        return {lo, hi};
    static const std::regex re(R"((\d+)\.\.(\d+))");
    std::smatch mt;
    if (!std::regex_match(c.dims, mt, re))
        throw UsageError("--dims expects A..B");
    int a = std::stoi(mt[1]), b = std::stoi(mt[2]);
    if (a > b)
        throw UsageError("empty dimension range " + c.dims);
    return {a, b};
}

json header(const std::string& cmd, Orientation o)
{
    json j;
    j["tool"] = "cubeforge";
    j["version"] = kVersion;
    j["command"] = cmd;
    j["orientation"] = orientation_str(o);
    return j;
}

void render_text(std::ostream& os, const json& j, int indent)
{
    std::string pad(indent, ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        if (v.is_object()) {
            os << pad << it.key() << ":\n";
            render_text(os, v, indent + 2);
        } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& x) { return x.is_structured(); })) {
            os << pad << it.key() << ":\n";
            for (const json& x : v) {
                if (x.is_object()) {
                    os << pad << "  -\n";
                    render_text(os, x, indent + 4);
                } else {
                    os << pad << "  - " << x.dump() << "\n";
                }
            }
        } else if (v.is_string()) {
            os << pad << it.key() << ": " << v.get<std::string>() << "\n";
        } else {
            os << pad << it.key() << ": " << v.dump() << "\n";
        }
    }
}

void emit(const Config& c, const json& j)
{
    if (c.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        render_text(std::cout, j, 0);
}

std::vector<NerveCell> cells_of_dim(const CubNerve& m, int n, int bound, std::uint64_t seed, int fallback,
                                    std::string& how)
{
    try {
        auto v = enumerate_cells(m, n, bound);
        how = "exhaustive";
        return v;
    } catch (const BudgetExceeded&) {
        NerveSampler smp(m, n, bound, seed + static_cast<std::uint64_t>(n));
        std::vector<NerveCell> out;
        for (int k = 0; k < fallback; ++k)
            if (auto a = smp.sample(n))
                out.push_back(*a);
        how = "random " + std::to_string(out.size()) + " (enumeration budget exceeded)";
        return out;
    }
}

int cmd_check(const Config& c)
{
    Adc K = load_input(c);
    auto [lo, hi] = dim_range(c, 0, 2);
    json j = header("check", K.orientation);
    auto adc_rep = validate(K);
    json adc_v = json::array();
    for (const auto& v : adc_rep.violations)
        adc_v.push_back(v);
    j["complex"] = {{"degrees", K.top_degree()}, {"violations", adc_v}};
    if (!adc_rep.ok()) {
        j["result"] = "violations";
        emit(c, j);
        return 1;
    }
    CubNerve m(K, std::min(9, hi + 2));
    NerveSampler smp(m, hi + 1, c.bound, c.seed);
    auto filler = nerve_filler(m, smp);
    std::vector<NerveCell> sample;
    json desc = json::array();
    for (int n = lo; n <= hi; ++n) {
        std::string how;
        auto cells = cells_of_dim(m, n, c.bound, c.seed, std::max(c.random, 200), how);
        sample.insert(sample.end(), cells.begin(), cells.end());
        std::size_t extra = 0;
        NerveSampler rs(m, n, c.bound, c.seed * 7919 + static_cast<std::uint64_t>(n));
        for (int k = 0; k < c.random; ++k)
            if (auto a = rs.sample(n)) {
                sample.push_back(*a);
                ++extra;
            }
        desc.push_back("dim " + std::to_string(n) + ": " + how + " " + std::to_string(cells.size()) + " + random " +
                       std::to_string(extra) + ", bound " + std::to_string(c.bound));
    }
    auto rep = check_axioms(m, sample, &filler);
    j["sample"] = desc;
    j["axioms"] = axiom_report_to_json(rep);
    j["result"] = rep.ok() ? "ok" : "violations";
    emit(c, j);
    return rep.ok() ? 0 : 1;
}

int cmd_classify(const Config& c)
{
    Adc K = load_input(c);
    auto [lo, hi] = dim_range(c, 1, 2);
    lo = std::max(lo, 1);
    if (lo > hi)
        throw UsageError("empty dimension range");
    auto adc_rep = validate(K);
    if (!adc_rep.ok())
        throw ParseError("complex fails validation: " + adc_rep.violations.front());
    CubNerve m(K, std::min(9, hi + 2));
    std::map<int, std::vector<NerveCell>> samples;
    std::string desc;
    for (int n = lo; n <= hi; ++n) {
        std::string how;
        samples[n] = cells_of_dim(m, n, c.bound, c.seed, std::max(c.random, 200), how);
        desc += (desc.empty() ? "" : "; ") + std::string("dim ") + std::to_string(n) + " " + how + " " +
                std::to_string(samples[n].size());
    }
    desc += "; bound " + std::to_string(c.bound) + "; seed " + std::to_string(c.seed);
    auto rep = classify_omega_p(m, samples, desc);
    json j = header("classify", K.orientation);
    j["sample"] = rep.sample_description;
    json dims = json::array();
    std::optional<NerveCell> witness;
    bool agree = true;
    for (const auto& d : rep.dims) {
        dims.push_back({{"dim", d.n},
                        {"sampled", d.sample},
                        {"invertible", d.invertible},
                        {"disagreements", d.disagreements},
                        {"all_invertible", d.cond1},
                        {"shell_criterion", d.cond3},
                        {"fold_images_invertible", d.cond5}});
        if (d.witness)
            witness = d.witness;
        agree = agree && d.disagreements == 0;
    }
    j["dims"] = dims;
    if (rep.witnessed)
        j["p-estimate"] = "≥ " + std::to_string(rep.p_estimate) + " (witness cell attached)";
    else
        j["p-estimate"] = "0";
    if (witness)
        j["witness"] = cell_to_json(m, *witness);
    emit(c, j);
    return agree ? 0 : 1;
}

NerveCell load_cell(const Config& c, const CubNerve& m)
{
    if (c.cell_path.empty())
        throw UsageError("--cell is required");
    return cell_from_json(m, parse_json_text(read_file(c.cell_path), c.cell_path));
}

json face_summary(const CubNerve& m, const NerveCell& a)
{
    json f = json::object();
    for (int i = 1; i <= a.n; ++i)
        for (Sign s : kSigns) {
            NerveCell b = m.face(a, i, s);
            std::string tag = "nondegenerate";
            for (int j = 1; j <= b.n; ++j)
                if (in_image_eps(m, b, j)) {
                    tag = "degenerate (e" + std::to_string(j) + ")";
                    break;
                }
            if (b.n == 0)
                tag = "vertex";
            f["d" + std::to_string(i) + sign_str(s)] = tag;
        }
    return f;
}

int cmd_invert(const Config& c)
{
    Adc K = load_input(c);
    CubNerve m(K);
    NerveCell a = load_cell(c, m);
    json j = header("invert", K.orientation);
    NerveCell b;
    if (c.kind == "R") {
        b = nc_r_inverse(m, a, c.index);
        if (!verify_r_inverse(m, a, b, c.index))
            throw Error("R-inverse failed verification");
    } else if (c.kind == "T") {
        b = nc_t_inverse(m, a, c.index);
        if (!verify_t_inverse(m, a, b, c.index))
            throw Error("T-inverse failed verification");
    } else {
        throw UsageError("--kind must be R or T");
    }
    j["operation"] = c.kind + std::to_string(c.index);
    j["verified"] = true;
    if (a.n >= 1) {
        j["input_thin"] = is_thin(m, a);
        j["thin"] = is_thin(m, b);
    }
    j["cell"] = cell_to_json(m, b);
    emit(c, j);
    return 0;
}

int cmd_fold(const Config& c)
{
    Adc K = load_input(c);
    CubNerve m(K);
    NerveCell a = load_cell(c, m);
    int chosen = (c.phi ? 1 : 0) + (c.psi_i ? 1 : 0) + (c.full_fold ? 1 : 0);
    if (chosen != 1)
        throw UsageError("exactly one of --phi, --psi, --full is required");
    json j = header("fold", K.orientation);
    NerveCell b;
    if (c.phi) {
        b = Phi(m, a, *c.phi);
        j["operation"] = "Phi" + std::to_string(*c.phi);
    } else if (c.psi_i) {
        b = psi(m, a, *c.psi_i);
        j["operation"] = "psi" + std::to_string(*c.psi_i);
    } else {
        b = fold(m, a);
        j["operation"] = "fold";
    }
    j["faces"] = face_summary(m, b);
    j["cell"] = cell_to_json(m, b);
    emit(c, j);
    return 0;
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + tok + "'");
        }
    }
    return out;
}

std::string word_str(const TWord& w) { return w.letters.empty() ? "1" : w.str(); }

int cmd_perm(const Config& c)
{
    json j = header("perm", c.orientation.empty() ? Orientation::Printed : parse_orientation(c.orientation));
    std::string result;
    if (c.action == "boundary") {
        TWord w = parse_word(c.word);
        result = word_str(boundary_word(w, c.index));
    } else if (c.action == "eval") {
        result = eval_word(parse_word(c.word)).str();
    } else if (c.action == "length") {
        result = std::to_string(length(Perm(parse_int_list(c.perm))));
    } else if (c.action == "reduced") {
        Perm p(parse_int_list(c.perm));
        for (const auto& w : reduced_words(p))
            result += (result.empty() ? "" : "\n") + word_str(w);
        if (result.empty())
            result = "1";
    } else if (c.action == "rho") {
        Perm r = rho(c.n, c.m);
        result = r.str() + " = " + word_str(min_rep(r));
    } else {
        throw UsageError("perm action must be boundary, eval, length, reduced or rho");
    }
    if (c.format == "json") {
        j["action"] = c.action;
        j["result"] = result;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << result << "\n";
    }
    return 0;
}

int cmd_transfor(const Config& c)
{
    Adc K = load_input(c);
    auto [lo, hi] = dim_range(c, 0, 2);
    auto C = std::make_shared<const CubNerve>(K, std::min(9, hi + c.p + 2));
    std::vector<NerveCell> sample;
    for (int n = 0; n <= hi; ++n) {
        auto cells = enumerate_cells(*C, n, c.bound);
        sample.insert(sample.end(), cells.begin(), cells.end());
    }
    (void)lo;
    NerveTransfor F = canonical_transfor(C, c.p, Variance::Lax, sample, c.full_from);
    json j = header("transfor", K.orientation);
    j["transfor"] = "canonical lax " + std::to_string(c.p) + "-transfor into the nerve of cube(" +
                    std::to_string(c.p) + ") (x) K, target cones full from degree " + std::to_string(c.full_from);
    j["sample"] = "declared finite sample: " + std::to_string(sample.size()) + " cells of dimension <= " +
                  std::to_string(hi) + ", bound " + std::to_string(c.bound);
    auto vr = validate_transfor(F);
    j["lax_valid"] = vr.ok();
    j["lax_instances"] = vr.equations.total();
    bool pseudo = is_pseudo(F);
    j["pseudo"] = pseudo;
    if (!pseudo) {
        j["result"] = "not pseudo";
        emit(c, j);
        return 1;
    }
    NerveTransfor G = to_oplax(F);
    auto gr = validate_transfor(G);
    bool round = to_lax(G) == F;
    j["oplax_valid"] = gr.ok();
    j["oplax_instances"] = gr.equations.total();
    j["round_trip"] = round;
    bool ok = vr.ok() && gr.ok() && round;
    j["result"] = ok ? "ok" : "violations";
    if (c.emit == "table")
        j["table"] = transfor_to_json(F);
    else if (c.emit == "oplax")
        j["table"] = transfor_to_json(G);
    else if (c.emit != "report")
        throw UsageError("--emit must be report, table or oplax");
    emit(c, j);
    return ok ? 0 : 1;
}

void add_input(CLI::App* s, Config& c)
{
    s->add_option("--adc", c.adc_path, "ADC file (JSON)");
    s->add_option("--builtin", c.builtin, "named complex: disk:N or cube:N, optionally ,full>=K");
    s->add_option("--orientation", c.orientation, "printed or flipped")->check(CLI::IsMember({"printed", "flipped"}));
}

void add_common(CLI::App* s, Config& c)
{
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

void add_sampling(CLI::App* s, Config& c)
{
    s->add_option("--dim", c.dim, "single dimension")->check(CLI::NonNegativeNumber);
    s->add_option("--dims", c.dims, "dimension range A..B");
    s->add_option("--bound", c.bound, "coefficient bound for enumeration")->check(CLI::NonNegativeNumber);
    s->add_option("--seed", c.seed, "seed for all sampling");
    s->add_option("--random", c.random, "extra random cells per dimension")->check(CLI::NonNegativeNumber);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cubeforge: cubical omega-categories with connections over augmented directed complexes"};
    app.set_version_flag("--version", std::string("cubeforge ") + kVersion);
    app.require_subcommand(1);
    Config c;

    auto* check = app.add_subcommand("check", "validate an ADC and check the cubical axioms on its nerve");
    add_input(check, c);
    add_common(check, c);
    add_sampling(check, c);

    auto* classify = app.add_subcommand("classify", "estimate p for which the nerve is a cubical (omega,p)-category");
    add_input(classify, c);
    add_common(classify, c);
    add_sampling(classify, c);

    auto* invert = app.add_subcommand("invert", "R_i- or T_i-inverse of a nerve cell");
    add_input(invert, c);
    add_common(invert, c);
    invert->add_option("--cell", c.cell_path, "cell file (JSON)");
    invert->add_option("--kind", c.kind, "R or T")->check(CLI::IsMember({"R", "T"}));
    invert->add_option("--i", c.index, "direction")->check(CLI::PositiveNumber);

    auto* fold_cmd = app.add_subcommand("fold", "folding operations on a nerve cell");
    add_input(fold_cmd, c);
    add_common(fold_cmd, c);
    fold_cmd->add_option("--cell", c.cell_path, "cell file (JSON)");
    fold_cmd->add_option("--phi", c.phi, "apply Phi_k");
    fold_cmd->add_option("--psi", c.psi_i, "apply psi_i");
    fold_cmd->add_flag("--full", c.full_fold, "apply the full fold");

    auto* perm = app.add_subcommand("perm", "words and permutations");
    add_common(perm, c);
    perm->add_option("--orientation", c.orientation, "printed or flipped")->check(CLI::IsMember({"printed", "flipped"}));
    perm->add_option("action", c.action, "boundary, eval, length, reduced or rho")->required();
    perm->add_option("--word", c.word, "word such as \"T1 T2\"");
    perm->add_option("--perm", c.perm, "permutation as images, e.g. \"2 3 1\"");
    perm->add_option("--i", c.index, "face index")->check(CLI::PositiveNumber);
    perm->add_option("--n", c.n, "first block of rho")->check(CLI::NonNegativeNumber);
    perm->add_option("--m", c.m, "second block of rho")->check(CLI::NonNegativeNumber);

    auto* tr = app.add_subcommand("transfor", "build a canonical lax transfor and convert it to oplax");
    add_input(tr, c);
    add_common(tr, c);
    add_sampling(tr, c);
    tr->add_option("--p", c.p, "transfor degree")->check(CLI::NonNegativeNumber);
    tr->add_option("--full-from", c.full_from, "widen target cones to full from this degree (-1: keep)");
    tr->add_option("--emit", c.emit, "report, table or oplax");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check)
            return cmd_check(c);
        if (*classify)
            return cmd_classify(c);
        if (*invert)
            return cmd_invert(c);
        if (*fold_cmd)
            return cmd_fold(c);
        if (*perm)
            return cmd_perm(c);
        if (*tr)
            return cmd_transfor(c);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const NotInvertible& e) {
        std::cerr << "not invertible: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
