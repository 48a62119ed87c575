#include "zxstar/catalog.hpp"

#include "zxstar/serialize.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace zxstar {

double DecompositionRule::scaling() const {
    return std::log2(static_cast<double>(terms_p)) / reduction_r;
}

bool DecompositionRule::verify(const OracleLimits& limits) const {
    return verify_rule(lhs, branches, limits);
}

std::vector<Term> elementary_decompose(const Diagram& d, VertexId v) {
    const Vertex& vert = d.vertex(v);
    if (vert.type == VertexType::Boundary)
        throw std::invalid_argument("elementary_decompose: boundary vertex");
    VertexType leaf_type =
        vert.type == VertexType::Z ? VertexType::X : VertexType::Z;
    Phase alpha = vert.phase;
    std::vector<Term> out;
    for (int branch = 0; branch < 2; ++branch) {
        Term t;
        t.diagram = d;
        t.diagram.set_phase(v, Phase::zero());
        VertexId leaf = t.diagram.add_vertex(
            leaf_type, branch == 0 ? Phase::zero() : Phase::pi());
        t.diagram.add_edge(leaf, v, EdgeKind::Plain);
        t.coefficient = ExactScalar::inv_sqrt2();
        if (branch == 1)
            t.coefficient = t.coefficient * ExactScalar::phase_factor(alpha);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Term> dynamic_decompose(const Diagram& d, VertexId v) {
    const Vertex& vert = d.vertex(v);
    if (vert.type != VertexType::Z)
        throw std::invalid_argument("dynamic_decompose: not a Z spider");
    std::size_t m = d.star_degree(v);
    if (m == 0)
        throw std::invalid_argument("dynamic_decompose: no star edges");
    int n = static_cast<int>(d.degree(v) - m);
    Phase alpha = vert.phase;

    std::vector<Term> out;
    for (int branch = 0; branch < 2; ++branch) {
        Term t;
        t.diagram = d;
        auto inc = t.diagram.incidences(v); // copy
        t.diagram.remove_vertex(v);
        for (const auto& [w, kind] : inc) {
            if (w == v)
                throw std::invalid_argument("dynamic_decompose: self-loop on master");
            VertexType lt;
            Phase lp;
            if (kind == EdgeKind::Star) {
                // branch 0: star absorbs X(0) -> Z(0) at the far end (sqrt2
                // folded into the coefficient); branch 1: X(pi) -> X(0).
                lt = branch == 0 ? VertexType::Z : VertexType::X;
                lp = Phase::zero();
            } else {
                lt = VertexType::X;
                lp = branch == 0 ? Phase::zero() : Phase::pi();
            }
            VertexId leaf = t.diagram.add_vertex(lt, lp);
            t.diagram.add_edge(leaf, w,
                               kind == EdgeKind::Star ? EdgeKind::Plain : kind);
        }
        if (branch == 0) {
            t.coefficient = ExactScalar::sqrt2_pow(-n);
        } else {
            t.coefficient = ExactScalar::sqrt2_pow(-(n + static_cast<int>(m))) *
                            ExactScalar::phase_factor(alpha);
        }
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

std::filesystem::path g_fixture_dir; // set lazily
std::mutex g_catalog_mutex;
std::vector<DecompositionRule> g_catalog;
bool g_catalog_loaded = false;

std::filesystem::path default_fixture_dir() {
    namespace fs = std::filesystem;
    const char* env = std::getenv("ZXSTAR_RULE_DIR");
    if (env && *env)
        return env;
    for (fs::path base : {fs::current_path(), fs::current_path().parent_path()}) {
        for (int up = 0; up < 4; ++up) {
            fs::path cand = base / "fixtures" / "rules";
            if (fs::is_directory(cand))
                return cand;
            base = base.parent_path();
        }
    }
    return "fixtures/rules";
}

} // namespace

void set_rule_fixture_dir(const std::filesystem::path& dir) {
    std::lock_guard lock(g_catalog_mutex);
    g_fixture_dir = dir;
    g_catalog_loaded = false;
    g_catalog.clear();
}

std::filesystem::path rule_fixture_dir() {
    std::lock_guard lock(g_catalog_mutex);
    if (g_fixture_dir.empty())
        g_fixture_dir = default_fixture_dir();
    return g_fixture_dir;
}

DecompositionRule load_rule(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is)
        throw std::runtime_error("load_rule: cannot open " + file.string());
    std::string header;
    std::getline(is, header);
    if (header != "zxstar-rule v1")
        throw std::runtime_error("load_rule: bad version header in " + file.string());
    DecompositionRule rule;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "id")
            ls >> rule.id;
        else if (tag == "legs")
            ls >> rule.legs;
        else if (tag == "phase")
            ls >> rule.phase_eighths;
        else if (tag == "terms")
            ls >> rule.terms_p;
        else if (tag == "reduction")
            ls >> rule.reduction_r;
        else if (tag == "lhs")
            rule.lhs = read_diagram(is);
        else if (tag == "branch") {
            long long a, b, c, d;
            unsigned k;
            if (!(ls >> a >> b >> c >> d >> k))
                throw std::runtime_error("load_rule: malformed branch line: " + line);
            rule.branches.emplace_back(ExactScalar(a, b, c, d, k), read_diagram(is));
        } else
            throw std::runtime_error("load_rule: unknown tag: " + line);
    }
    if (rule.id.empty() || rule.branches.empty())
        throw std::runtime_error("load_rule: incomplete rule in " + file.string());
    return rule;
}

void save_rule(const DecompositionRule& rule, const std::filesystem::path& file) {
    std::ofstream os(file);
    os << "zxstar-rule v1\n";
    os << "id " << rule.id << "\n";
    os << "legs " << rule.legs << "\n";
    os << "phase " << rule.phase_eighths << "\n";
    os << "terms " << rule.terms_p << "\n";
    os << "reduction " << rule.reduction_r << "\n";
    os << "lhs\n";
    write_diagram(os, rule.lhs);
    for (const auto& [coeff, dia] : rule.branches) {
        os << "branch " << coeff.a() << ' ' << coeff.b() << ' ' << coeff.c() << ' '
           << coeff.d() << ' ' << coeff.k() << "\n";
        write_diagram(os, dia);
    }
}

const std::vector<DecompositionRule>& shipped_catalog() {
    std::lock_guard lock(g_catalog_mutex);
    if (!g_catalog_loaded) {
        if (g_fixture_dir.empty())
            g_fixture_dir = default_fixture_dir();
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(g_fixture_dir))
            if (e.path().extension() == ".rule")
                files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
            g_catalog.push_back(load_rule(f));
        g_catalog_loaded = true;
    }
    return g_catalog;
}

DecompositionRule star_edge_rule(int k) {
    if (k < 1 || k > 3)
        throw std::invalid_argument("star_edge_rule: k must be 1..3");
    for (const auto& r : shipped_catalog())
        if (r.id == "star_edge_" + std::to_string(k))
            return r;
    throw std::runtime_error("star_edge_rule: fixture missing");
}

DecompositionRule star_state_rule(int legs, Phase phase) {
    if (phase.is_pi())
        throw std::invalid_argument(
            "star_state_rule: the pi-phase star state is Clifford");
    std::string id =
        "star_state_" + std::to_string(legs) + "_phase_" + std::to_string(phase.eighths());
    for (const auto& r : shipped_catalog())
        if (r.id == id)
            return r;
    throw std::invalid_argument("star_state_rule: unsupported (legs, phase)");
}

std::vector<RuleReport> catalog_verify_all() {
    std::vector<RuleReport> out;
    for (const auto& r : shipped_catalog()) {
        RuleReport rep;
        rep.id = r.id;
        rep.branch_count = static_cast<int>(r.branches.size());
        rep.scaling = r.scaling();
        rep.pass = r.verify();
        out.push_back(rep);
    }
    return out;
}

} // namespace zxstar
