#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "neron/cx.hpp"
#include "neron/divisors.hpp"
#include "neron/immersion.hpp"
#include "neron/ssgraph.hpp"
#include "neron/x0p.hpp"

using namespace neron;
using ojson = nlohmann::ordered_json;

namespace {

struct Output {
    std::string path;  // empty = stdout
    std::ostringstream buf;

    void flush() {
        if (path.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream out(path);
            out << buf.str();
        }
    }
};

std::vector<uint64_t> primes_up_to(uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> out;
    for (uint64_t p = lo; p <= hi; ++p)
        if (is_prime_u64(p)) out.push_back(p);
    return out;
}

ojson report_skeleton(uint64_t p, const std::string& command, const std::string& verdict) {
    ojson j;
    j["p"] = p;
    j["command"] = command;
    j["verdict"] = verdict;
    j["witnesses"] = ojson::object();
    j["values"] = ojson::object();
    return j;
}

int run_ss(uint64_t p, bool json, long long sweep, Output& out) {
    auto one = [&](uint64_t pp) {
        SupersingularLocus locus = supersingular_j_invariants(pp);
        Rat64 mass = mass_check(locus);
        long long g = std::gcd<long long>(pp - 1, 12);
        bool ok = mass.num == static_cast<long long>(pp - 1) / g && mass.den == 12 / g;
        return std::tuple<SupersingularLocus, Rat64, bool>(std::move(locus), mass, ok);
    };
    if (sweep < 0) {
        auto [locus, mass, ok] = one(p);
        if (json) {
            ojson j = report_skeleton(p, "ss", ok ? "ok" : "mass-mismatch");
            j["values"]["points"] = ojson::array();
            for (const auto& pt : locus.points) {
                ojson jp;
                jp["j"] = pt.j.str();
                jp["e"] = pt.e;
                jp["rational"] = pt.rational;
                j["values"]["points"].push_back(jp);
            }
            j["values"]["mass"] = std::to_string(mass.num) + "/" + std::to_string(mass.den);
            out.buf << j.dump(2) << "\n";
        } else {
            for (const auto& pt : locus.points)
                out.buf << "j=" << pt.j.str() << " e=" << pt.e
                        << " rational=" << (pt.rational ? "true" : "false") << "\n";
        }
        return ok ? 0 : 1;
    }
    bool all_ok = true;
    ojson arr = ojson::array();
    for (uint64_t pp : primes_up_to(23, static_cast<uint64_t>(sweep))) {
        auto [locus, mass, ok] = one(pp);
        all_ok = all_ok && ok;
        if (json) {
            ojson j = report_skeleton(pp, "ss", ok ? "ok" : "mass-mismatch");
            j["values"]["points"] = locus.points.size();
            j["values"]["mass"] = std::to_string(mass.num) + "/" + std::to_string(mass.den);
            arr.push_back(j);
        } else {
            out.buf << "p=" << pp << " points=" << locus.points.size() << " mass=" << mass.num
                    << "/" << mass.den << (ok ? " ok" : " MISMATCH") << "\n";
        }
    }
    if (json) out.buf << arr.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

int run_cx(uint64_t p, const std::string& base, bool json, Output& out) {
    SupersingularLocus locus = supersingular_j_invariants(p);
    PrimeField F(p);
    std::optional<Fq> b;
    if (!base.empty()) b = F.parse(base);
    CxTable table = propagate_cx(locus, b);
    Fq alpha = product_formula_constant(table);
    if (json) {
        ojson j = report_skeleton(p, "cx", "ok");
        j["values"]["base"] = table.base.str();
        j["values"]["entries"] = ojson::array();
        for (const CxEntry& en : table.entries) {
            ojson je;
            je["j"] = en.j.str();
            je["e"] = en.e;
            je["c"] = en.c.str();
            j["values"]["entries"].push_back(je);
        }
        j["values"]["alpha"] = alpha.str();
        out.buf << j.dump(2) << "\n";
    } else {
        for (const CxEntry& en : table.entries)
            out.buf << "j=" << en.j.str() << " c=" << en.c.str() << "\n";
        out.buf << "alpha=" << alpha.str() << "\n";
    }
    return 0;
}

int run_t76(uint64_t p, bool json, long long sweep, Output& out) {
    auto one = [&](uint64_t pp) {
        CxTable table = propagate_cx(pp);
        return product_formula_constant(table);  // throws unless constant and in F_p^*
    };
    if (sweep < 0) {
        Fq alpha = one(p);
        if (json) {
            ojson j = report_skeleton(p, "t76", "ok");
            j["values"]["alpha"] = alpha.str();
            out.buf << j.dump(2) << "\n";
        } else {
            out.buf << "alpha=" << alpha.str() << "\n";
        }
        return 0;
    }
    ojson arr = ojson::array();
    for (uint64_t pp : primes_up_to(23, static_cast<uint64_t>(sweep))) {
        Fq alpha = one(pp);
        if (json) {
            ojson j = report_skeleton(pp, "t76", "ok");
            j["values"]["alpha"] = alpha.str();
            arr.push_back(j);
        } else {
            out.buf << "p=" << pp << " alpha=" << alpha.str() << " ok\n";
        }
    }
    if (json) out.buf << arr.dump(2) << "\n";
    return 0;
}

ojson cuspidal_report_json(const CuspidalIntersectionReport& rep) {
    ojson j = report_skeleton(rep.p, "cuspidal", rep.proved ? "Proved" : "Inconclusive");
    j["values"]["n"] = rep.n;
    j["witnesses"]["components"] = ojson::array();
    for (const ComponentVerdict& cv : rep.components) {
        ojson jc;
        jc["component"] = cv.component;
        jc["verdict"] = verdict_name(cv.verdict);
        jc["detail"] = cv.detail;
        if (cv.cycle_product) {
            jc["cycle_edges"] = cv.cycle_edges;
            ojson fs = ojson::array();
            for (const Fq& f : cv.cycle_factors) fs.push_back(f.str());
            jc["cycle_factors"] = fs;
            jc["cycle_product"] = cv.cycle_product->str();
        }
        j["witnesses"]["components"].push_back(jc);
    }
    return j;
}

void cuspidal_report_human(const CuspidalIntersectionReport& rep, Output& out) {
    out.buf << "p=" << rep.p << " n=" << rep.n << "\n";
    for (const ComponentVerdict& cv : rep.components) {
        out.buf << "  " << cv.component << ": " << verdict_name(cv.verdict);
        if (!cv.detail.empty()) out.buf << " (" << cv.detail << ")";
        if (cv.cycle_product) {
            out.buf << " [cycle";
            for (size_t i = 0; i < cv.cycle_edges.size(); ++i)
                out.buf << " " << cv.cycle_edges[i];
            out.buf << "; factors";
            for (const Fq& f : cv.cycle_factors) out.buf << " " << f.str();
            out.buf << "; product " << cv.cycle_product->str() << "]";
        }
        out.buf << "\n";
    }
    out.buf << "overall: " << (rep.proved ? "Proved" : "Inconclusive") << "\n";
}

int run_cuspidal(uint64_t p, bool json, long long sweep, Output& out) {
    if (sweep < 0) {
        CuspidalIntersectionReport rep = verify_cuspidal_intersection(p);
        if (json) out.buf << cuspidal_report_json(rep).dump(2) << "\n";
        else cuspidal_report_human(rep, out);
        return rep.proved ? 0 : 1;
    }
    bool all_ok = true;
    ojson arr = ojson::array();
    for (uint64_t pp : primes_up_to(23, static_cast<uint64_t>(sweep))) {
        CuspidalIntersectionReport rep = verify_cuspidal_intersection(pp);
        all_ok = all_ok && rep.proved;
        if (json) arr.push_back(cuspidal_report_json(rep));
        else out.buf << "p=" << pp << " " << (rep.proved ? "Proved" : "Inconclusive") << "\n";
    }
    if (json) out.buf << arr.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

int run_phi(const std::string& path, bool json, Output& out) {
    DualGraph g = graph_from_file(path);
    ComponentGroup cg = ComponentGroup::of(g);
    std::vector<Int> inv = cg.invariant_factors();
    const std::string& base = g.vertices.front().id;
    if (json) {
        ojson j = report_skeleton(g.p ? *g.p : 0, "phi", "ok");
        ojson ja = ojson::array();
        for (const Int& d : inv) ja.push_back(d.str());
        j["values"]["invariant_factors"] = ja;
        j["values"]["order"] = cg.order().str();
        j["values"]["classes"] = ojson::object();
        for (const Vertex& v : g.vertices) {
            if (v.id == base) continue;
            Multidegree m;
            m[v.id] = 1;
            m[base] = -1;
            ojson jc = ojson::array();
            for (const Int& c : cg.class_of(m)) jc.push_back(c.str());
            j["values"]["classes"][v.id + "-" + base] = jc;
        }
        out.buf << j.dump(2) << "\n";
    } else {
        out.buf << "invariant factors: [";
        for (size_t i = 0; i < inv.size(); ++i) out.buf << (i ? ", " : "") << inv[i].str();
        out.buf << "]\n";
        for (const Vertex& v : g.vertices) {
            if (v.id == base) continue;
            Multidegree m;
            m[v.id] = 1;
            m[base] = -1;
            std::vector<Int> cls = cg.class_of(m);
            out.buf << "class(" << v.id << " - " << base << ") = [";
            for (size_t i = 0; i < cls.size(); ++i) out.buf << (i ? ", " : "") << cls[i].str();
            out.buf << "]\n";
        }
    }
    return 0;
}

int run_immersion(const std::string& path, bool json, Output& out) {
    DualGraph g = graph_from_file(path);
    ImmersionReport rep = closed_immersion(g);
    if (json) {
        ojson j = report_skeleton(g.p ? *g.p : 0, "immersion",
                                  rep.closed_immersion ? "closed-immersion" : "not-closed-immersion");
        j["values"]["injectivity_ok"] = rep.injectivity_ok;
        j["values"]["properness_ok"] = rep.properness_ok;
        j["values"]["closed_immersion"] = rep.closed_immersion;
        j["values"]["regular_case"] = rep.regular_case;
        if (!rep.injectivity_ok) j["witnesses"]["component"] = rep.injectivity_counterexample;
        j["witnesses"]["edges"] = ojson::array();
        for (const EdgeDiagnostic& d : rep.edges) {
            ojson jd;
            jd["edge"] = d.edge;
            jd["bridge"] = d.bridge;
            jd["properness_ok"] = d.properness_ok;
            if (d.failing_prime) jd["failing_prime"] = *d.failing_prime;
            j["witnesses"]["edges"].push_back(jd);
        }
        out.buf << j.dump(2) << "\n";
    } else {
        out.buf << "injectivity: " << (rep.injectivity_ok ? "ok" : "fails at " + rep.injectivity_counterexample)
                << "\n";
        out.buf << "properness: " << (rep.properness_ok ? "ok" : "fails") << "\n";
        for (const EdgeDiagnostic& d : rep.edges) {
            out.buf << "  edge " << d.edge << ": " << (d.bridge ? "bridge" : "non-bridge");
            if (!d.properness_ok) out.buf << " properness fails at q=" << *d.failing_prime;
            out.buf << "\n";
        }
        out.buf << "closed immersion: " << (rep.closed_immersion ? "yes" : "no") << "\n";
    }
    return rep.closed_immersion ? 0 : 1;
}

DivisorSpec divisor_from_json(const std::string& path, const PrimeField& F) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    DivisorSpec spec;
    for (const auto& je : j.at("points")) {
        DivisorEntry en;
        en.vertex = je.at("vertex").get<std::string>();
        std::string coord = je.at("coord").get<std::string>();
        en.point = coord == "inf" ? LinePoint(std::nullopt) : LinePoint(F.parse(coord));
        en.mult = je.at("mult").get<long long>();
        spec.push_back(en);
    }
    return spec;
}

int run_divisor(const std::string& gpath, const std::string& dpath, bool json, Output& out) {
    DualGraph g = graph_from_file(gpath);
    if (!g.p) throw std::runtime_error("divisor: graph file must carry the prime p");
    PrimeField F(*g.p);
    DivisorSpec E = divisor_from_json(dpath, F);
    EdgeCoefficients coeffs = edge_coefficients_from_graph(g, F);
    TrivialityDecision dec = is_trivial(g, coeffs, E, F);
    std::string verdict = dec.kind == TrivialityKind::Zero ? "Zero"
                          : dec.kind == TrivialityKind::NonzeroComponentClass
                              ? "NonzeroComponentClass"
                              : "NonzeroCycleObstruction";
    if (json) {
        ojson j = report_skeleton(*g.p, "divisor", verdict);
        if (dec.obstructing_cycle) {
            ojson steps = ojson::array();
            for (const CycleStep& s : dec.obstructing_cycle->steps)
                steps.push_back(std::string(s.forward ? "+" : "-") + s.edge);
            j["witnesses"]["cycle"] = steps;
            j["witnesses"]["scalar"] = dec.cycle_scalar->str();
        }
        out.buf << j.dump(2) << "\n";
    } else {
        out.buf << verdict << "\n";
        if (dec.obstructing_cycle) {
            out.buf << "obstructing cycle:";
            for (const CycleStep& s : dec.obstructing_cycle->steps)
                out.buf << " " << (s.forward ? "+" : "-") << s.edge;
            out.buf << "\nscalar: " << dec.cycle_scalar->str() << "\n";
        }
    }
    return dec.kind == TrivialityKind::Zero ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"special fibres of Neron models of jacobians of nodal curves"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    long long sweep = -1;
    std::string out_path, base;
    app.add_flag("--json", json, "emit JSON reports");
    app.add_option("--out", out_path, "write output to a file");

    uint64_t p = 0;
    std::string graph_path, divisor_path;

    CLI::App* ss = app.add_subcommand("ss", "supersingular locus with thickness labels");
    ss->add_option("p", p, "prime (>= 5)");
    ss->add_option("--sweep", sweep, "run for all primes 23 <= p <= pmax");

    CLI::App* cx = app.add_subcommand("cx", "glueing coefficients by transport along T_2");
    cx->add_option("p", p, "prime (>= 23)")->required();
    cx->add_option("--base", base, "base point j (defaults to least rational with e = 1)");

    CLI::App* t76 = app.add_subcommand("t76", "constancy test for the product formula");
    t76->add_option("p", p, "prime (>= 23)");
    t76->add_option("--sweep", sweep, "run for all primes 23 <= p <= pmax");

    CLI::App* cusp = app.add_subcommand("cuspidal", "cuspidal-intersection verifier");
    cusp->add_option("p", p, "prime (>= 23)");
    cusp->add_option("--sweep", sweep, "run for all primes 23 <= p <= pmax");

    CLI::App* phi = app.add_subcommand("phi", "component group of a dual graph");
    phi->add_option("graph", graph_path, "graph JSON file")->required();

    CLI::App* imm = app.add_subcommand("immersion", "closed-immersion criteria for a dual graph");
    imm->add_option("graph", graph_path, "graph JSON file")->required();

    CLI::App* divi = app.add_subcommand("divisor", "divisor-class triviality decision");
    divi->add_option("graph", graph_path, "graph JSON file")->required();
    divi->add_option("--divisor", divisor_path, "divisor spec JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Output out;
    out.path = out_path;
    int rc = 2;
    try {
        if (ss->parsed()) {
            if (p == 0 && sweep < 0) throw std::runtime_error("ss: need a prime or --sweep");
            rc = run_ss(p, json, sweep, out);
        } else if (cx->parsed()) {
            rc = run_cx(p, base, json, out);
        } else if (t76->parsed()) {
            if (p == 0 && sweep < 0) throw std::runtime_error("t76: need a prime or --sweep");
            rc = run_t76(p, json, sweep, out);
        } else if (cusp->parsed()) {
            if (p == 0 && sweep < 0) throw std::runtime_error("cuspidal: need a prime or --sweep");
            rc = run_cuspidal(p, json, sweep, out);
        } else if (phi->parsed()) {
            rc = run_phi(graph_path, json, out);
        } else if (imm->parsed()) {
            rc = run_immersion(graph_path, json, out);
        } else if (divi->parsed()) {
            rc = run_divisor(graph_path, divisor_path, json, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    out.flush();
    return rc;
}
