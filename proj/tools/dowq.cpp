// dowq: build and inspect Dowling-lattice families, verify the eigenspace
// poset isomorphisms coset by coset, emit shellability certificates and
// exact Mobius series tables.
//
// Exit codes: 0 pass, 2 invalid input, 3 unsupported coset, 4 inconclusive
// (budget exhausted).  All numeric output is exact integer/rational text.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dowq/exact.hpp"
#include "dowq/family.hpp"
#include "dowq/json_io.hpp"
#include "dowq/order_complex.hpp"
#include "dowq/reflection.hpp"
#include "dowq/series.hpp"
#include "dowq/shellability.hpp"

using dowq::Int;
using dowq::Rat;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitInconclusive = 4;

long long default_budget() {
    if (const char* env = std::getenv("DOWQ_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 50'000'000;
}

struct Output {
    std::string format = "table";
    std::string out_path;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format: json or table")
            ->check(CLI::IsMember({"json", "table"}));
        cmd->add_option("--out", out_path, "Write the primary artifact (poset/certificate JSON) to this file");
    }
    void emit(const ojson& j, const std::string& table) const {
        if (format == "json")
            std::cout << j.dump(2) << "\n";
        else
            std::cout << table;
    }
    void write_artifact(const ojson& j) const {
        if (out_path.empty()) return;
        std::ofstream f(out_path);
        f << j.dump(2) << "\n";
    }
};

dowq::FamilySpec parse_family(int n, int r, int d, int k, const std::string& j_list) {
    dowq::FamilySpec s;
    s.n = n;
    s.r = r;
    s.d = d;
    s.k = k;
    if (!j_list.empty()) {
        std::stringstream ss(j_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            s.forbidden_zero_sizes.insert(std::stoi(tok));
        }
    }
    dowq::validate(s);
    return s;
}

// Closed forms from the arrangement Mobius formulas, when they apply.
ojson closed_form_check(const dowq::FamilySpec& s, const Int& mu) {
    ojson j;
    if (s.d != 1 || s.k != 1) return j;
    if (s.forbidden_zero_sizes.empty()) {
        Int expect = (s.n % 2 == 0) ? 1 : -1;
        for (int i = 1; i <= s.n - 1; ++i) expect *= (static_cast<long>(i) * s.r + 1);
        j["name"] = "(-1)^n (r+1)(2r+1)...((n-1)r+1)";
        j["value"] = dowq::to_string(expect);
        j["match"] = (expect == mu);
        return j;
    }
    if (s.forbidden_zero_sizes == std::set<int>{1} && s.r >= 2 && s.n >= 2) {
        Int expect = (s.n % 2 == 0) ? 1 : -1;
        for (int i = 1; i <= s.n - 2; ++i) expect *= (static_cast<long>(i) * s.r + 1);
        expect *= static_cast<long>(s.n - 1) * (s.r - 1);
        j["name"] = "(-1)^n (r+1)...((n-2)r+1)((n-1)(r-1))";
        j["value"] = dowq::to_string(expect);
        j["match"] = (expect == mu);
        return j;
    }
    return j;
}

int cmd_dowling(const dowq::FamilySpec& spec, const Output& out) {
    dowq::FinitePoset p = dowq::build_family(spec);
    Int mu = p.mobius_bounded();
    int top_rank = p.ranks() ? (*p.ranks())[p.unique_max()] : p.length();
    long long atoms = dowq::count_atoms(spec);

    ojson j;
    j["schema"] = "v1";
    j["family"] = spec.to_string();
    j["size"] = p.size();
    j["rank"] = top_rank;
    j["atoms"] = atoms;
    j["mobius"] = dowq::to_string(mu);
    ojson cf = closed_form_check(spec, mu);
    if (!cf.empty()) j["closed_form"] = cf;

    std::ostringstream t;
    t << spec.to_string() << "\n"
      << "  elements : " << p.size() << "\n"
      << "  rank     : " << top_rank << "\n"
      << "  atoms    : " << atoms << "\n"
      << "  mobius   : " << dowq::to_string(mu) << "\n";
    if (!cf.empty())
        t << "  closed form " << cf["name"].get<std::string>() << " = " << cf["value"].get<std::string>()
          << (cf["match"].get<bool>() ? "  [agrees]" : "  [MISMATCH]") << "\n";
    out.emit(j, t.str());
    out.write_artifact(dowq::poset_to_json(p));
    if (!cf.empty() && !cf["match"].get<bool>()) return 1;
    return kExitOk;
}

ojson eigen_report_json(const dowq::CosetParams& c, const dowq::VerifyReport& rep) {
    ojson j;
    j["schema"] = "v1";
    j["params"] = {{"r", c.r}, {"p", c.p}, {"n", c.n}, {"e", c.e}, {"m", c.m}};
    if (rep.degenerate) {
        j["case"] = "degenerate (n=1)";
    } else {
        j["case"] = rep.case_no;
        j["target"] = rep.target;
    }
    j["lhs_size"] = rep.lhs_size;
    j["rhs_size"] = rep.rhs_size;
    j["iso"] = rep.pass();
    j["mobius"] = dowq::to_string(rep.hat_mobius);
    return j;
}

int cmd_eigen_single(const dowq::CosetParams& c, bool exceptional, long long budget, const Output& out) {
    dowq::VerifyReport rep = dowq::verify_theorem(c, !exceptional, budget);
    ojson j = eigen_report_json(c, rep);
    std::ostringstream t;
    t << c.to_string() << "\n";
    if (rep.degenerate) {
        t << "  n = 1 is degenerate; nothing to verify\n";
    } else {
        t << "  case       : " << rep.case_no << "  (" << rep.target << ")\n"
          << "  sizes      : " << rep.lhs_size << " vs " << rep.rhs_size << "\n"
          << "  tau biject : " << (rep.tau_bijective ? "yes" : "NO") << "\n"
          << "  order iso  : " << (rep.order_iso ? "yes" : "NO") << "\n";
    }
    t << "  mu(hat-tilde) : " << dowq::to_string(rep.hat_mobius) << "\n";
    out.emit(j, t.str());
    out.write_artifact(j);
    if (rep.inconclusive) return kExitInconclusive;
    return rep.pass() ? kExitOk : 1;
}

int cmd_eigen_grid(int rmax, int nmax, int mmax, long long budget, const Output& out) {
    ojson rows = ojson::array();
    int total = 0, passes = 0;
    bool inconclusive = false;
    std::ostringstream t;
    for (int r = 1; r <= rmax; ++r)
        for (int p = 1; p <= r; ++p) {
            if (r % p != 0) continue;
            for (int e = 1; e <= p; ++e) {
                if (p % e != 0) continue;
                for (int n = 2; n <= nmax; ++n)
                    for (int m = 1; m <= mmax; ++m) {
                        auto c = dowq::CosetParams::make(r, p, n, e, m);
                        auto rep = dowq::verify_theorem(c, true, budget);
                        ++total;
                        passes += rep.pass();
                        inconclusive |= rep.inconclusive;
                        rows.push_back(eigen_report_json(c, rep));
                        t << (rep.pass() ? "pass " : "FAIL ") << c.to_string() << "  case "
                          << rep.case_no << "  mu=" << dowq::to_string(rep.hat_mobius) << "\n";
                    }
            }
        }
    ojson j;
    j["schema"] = "v1";
    j["grid"] = rows;
    j["total"] = total;
    j["passes"] = passes;
    j["all_pass"] = (total == passes);
    t << (total == passes ? "all " : "FAILURES: ") << passes << "/" << total << " cosets verified\n";
    out.emit(j, t.str());
    out.write_artifact(j);
    if (inconclusive) return kExitInconclusive;
    return total == passes ? kExitOk : 1;
}

int cmd_series(const std::string& kind, int r, int d, int e, int T, const Output& out) {
    std::vector<Int> mu = (kind == "mu-dde") ? dowq::mobius_Q_dde(r, d, e, T)
                                             : dowq::mobius_Q_dd0(r, d, T);
    ojson j;
    j["schema"] = "v1";
    j["kind"] = kind;
    j["r"] = r;
    j["d"] = d;
    if (kind == "mu-dde") j["e"] = e;
    j["T"] = T;
    j["mu"] = ojson::array();
    for (const auto& v : mu) j["mu"].push_back(dowq::to_string(v));

    std::ostringstream t;
    t << (kind == "mu-dde" ? "mu(Q_{dn+e}(dr,d,d))" : "mu(Q_{dn}(dr,d,d,{0}))") << "  r=" << r
      << " d=" << d;
    if (kind == "mu-dde") t << " e=" << e;
    t << "\n";
    for (int n = 0; n <= T; ++n)
        t << "  n=" << n << " : " << dowq::to_string(mu[n]) << "\n";
    out.emit(j, t.str());
    out.write_artifact(j);
    return kExitOk;
}

int cmd_shell_check(const dowq::FamilySpec& spec, const std::string& ordering, long long budget,
                    const Output& out) {
    dowq::FinitePoset p = dowq::build_family(spec);
    dowq::RAOResult res;
    std::string prov = ordering;
    if (ordering == "lex") {
        auto ord = dowq::lex_atom_order(p, spec);
        res = dowq::check_recursive_atom_ordering(p, ord, budget);
    } else {
        res = dowq::admits_rao(p, budget);
    }
    ojson j;
    j["schema"] = "v1";
    j["family"] = spec.to_string();
    j["ordering"] = prov;
    j["atoms"] = p.unique_min() >= 0 ? p.upper_covers(p.unique_min()).size() : 0;
    j["nodes"] = res.nodes_used;
    std::ostringstream t;
    t << spec.to_string() << "  (" << prov << " ordering)\n";
    switch (res.status) {
        case dowq::RAOResult::Status::Certified:
            j["status"] = "certified";
            t << "  recursive atom ordering: certified (" << res.nodes_used << " nodes)\n";
            break;
        case dowq::RAOResult::Status::Violated:
            j["status"] = "violated";
            j["witness"] = {{"i", res.witness_i}, {"j", res.witness_j}, {"y", res.witness_y},
                            {"detail", res.detail}};
            t << "  VIOLATED: " << res.detail << "\n";
            break;
        case dowq::RAOResult::Status::Inconclusive:
            j["status"] = "inconclusive";
            t << "  inconclusive: " << res.detail << "\n";
            break;
    }
    if (out.out_path.empty() && res.certified()) j["certificate"] = res.certificate;
    out.emit(j, t.str());
    if (res.certified()) out.write_artifact(res.certificate);
    if (res.status == dowq::RAOResult::Status::Inconclusive) return kExitInconclusive;
    return res.certified() ? kExitOk : 1;
}

int cmd_homology(const dowq::FamilySpec& spec, bool proper, const Output& out) {
    dowq::FinitePoset p = dowq::build_family(spec);
    dowq::FinitePoset target = proper ? p.proper_part() : p;
    dowq::OrderComplex c = dowq::order_complex(target);
    dowq::BettiVector b = dowq::homology_ranks(c);
    ojson j;
    j["schema"] = "v1";
    j["family"] = spec.to_string();
    j["proper"] = proper;
    j["minus_one"] = std::to_string(b.minus_one);
    j["betti"] = ojson::array();
    for (long long rnk : b.ranks) j["betti"].push_back(std::to_string(rnk));
    j["euler"] = dowq::to_string(c.reduced_euler());
    std::ostringstream t;
    t << spec.to_string() << (proper ? " (proper part)" : "") << "\n";
    t << "  H~[-1] rank : " << b.minus_one << "\n";
    for (std::size_t i = 0; i < b.ranks.size(); ++i)
        t << "  H~[" << i << "]  rank : " << b.ranks[i] << "\n";
    t << "  reduced Euler characteristic : " << dowq::to_string(c.reduced_euler()) << "\n";
    out.emit(j, t.str());
    out.write_artifact(j);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact combinatorics of Dowling-lattice families and reflection-coset eigenspace posets"};
    app.require_subcommand(1);
    long long budget = default_budget();

    // dowling
    auto* dow = app.add_subcommand("dowling", "Build a family poset, report size/rank/atoms/mobius");
    int n = 2, r = 1, d = 1, k = 1;
    std::string j_list;
    Output dow_out;
    dow->add_option("--n", n, "Ground set size")->required();
    dow->add_option("--r", r, "Label group order")->required();
    dow->add_option("--d", d, "Block size divisor");
    dow->add_option("--k", k, "Even-colouring modulus");
    dow->add_option("--J", j_list, "Forbidden zero-block sizes, comma separated");
    dow_out.add_flags(dow);

    // eigen
    auto* eig = app.add_subcommand("eigen", "Verify the eigenspace-poset isomorphism for a coset (or grid)");
    int er = 1, ep = 1, en = 2, ee = 1, em = 1;
    bool grid = false, exceptional = false;
    int rmax = 3, nmax = 4, mmax = 4;
    Output eig_out;
    eig->add_option("--r", er, "r of G(r,p,n)");
    eig->add_option("--p", ep, "p of G(r,p,n)");
    eig->add_option("--n", en, "n of G(r,p,n)");
    eig->add_option("--e", ee, "e | p selecting gamma = diag(xi_{er/p},1,...,1)");
    eig->add_option("--m", em, "order of the eigenvalue zeta");
    eig->add_flag("--grid", grid, "Run the whole verification grid");
    eig->add_option("--rmax", rmax, "Grid: max r");
    eig->add_option("--nmax", nmax, "Grid: max n");
    eig->add_option("--mmax", mmax, "Grid: max m");
    eig->add_flag("--exceptional", exceptional, "Request a non-diagonal coset (unsupported)");
    eig->add_option("--budget", budget, "Node budget for the isomorphism search (env DOWQ_BUDGET)");
    eig_out.add_flags(eig);

    // series
    auto* ser = app.add_subcommand("series", "Exact Mobius generating-function tables");
    ser->require_subcommand(1);
    int sr = 1, sd = 1, se = 0, sT = 8;
    Output ser_out;
    auto* dde = ser->add_subcommand("mu-dde", "mu(Q_{dn+e}(dr,d,d)) for n = 0..T");
    dde->add_option("--r", sr)->required();
    dde->add_option("--d", sd)->required();
    dde->add_option("--e", se)->required();
    dde->add_option("--T", sT);
    ser_out.add_flags(dde);
    auto* dd0 = ser->add_subcommand("mu-dd0", "mu(Q_{dn}(dr,d,d,{0})) for n = 1..T");
    dd0->add_option("--r", sr)->required();
    dd0->add_option("--d", sd)->required();
    dd0->add_option("--T", sT);
    ser_out.add_flags(dd0);

    // shell-check
    auto* shl = app.add_subcommand("shell-check", "Certify a recursive atom ordering for a family");
    int hn = 2, hr = 1, hd = 1, hk = 1;
    std::string h_j, ordering = "lex";
    Output shl_out;
    shl->add_option("--n", hn)->required();
    shl->add_option("--r", hr)->required();
    shl->add_option("--d", hd);
    shl->add_option("--k", hk);
    shl->add_option("--J", h_j, "Forbidden zero-block sizes, comma separated");
    shl->add_option("--ordering", ordering, "lex (check the word ordering) or search")
        ->check(CLI::IsMember({"lex", "search"}));
    shl->add_option("--budget", budget, "Node budget for the certificate search (env DOWQ_BUDGET)");
    shl_out.add_flags(shl);

    // homology
    auto* hom = app.add_subcommand("homology", "Reduced rational Betti numbers of a family order complex");
    int on = 2, orr = 1, od = 1, ok = 1;
    std::string o_j;
    bool proper = false;
    Output hom_out;
    hom->add_option("--n", on)->required();
    hom->add_option("--r", orr)->required();
    hom->add_option("--d", od);
    hom->add_option("--k", ok);
    hom->add_option("--J", o_j, "Forbidden zero-block sizes, comma separated");
    hom->add_flag("--proper", proper, "Take the proper part first");
    hom_out.add_flags(hom);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (dow->parsed()) return cmd_dowling(parse_family(n, r, d, k, j_list), dow_out);
        if (eig->parsed()) {
            if (exceptional)
                throw dowq::ExceptionalCosetUnsupported("the three non-diagonal cosets are out of scope");
            if (grid) return cmd_eigen_grid(rmax, nmax, mmax, budget, eig_out);
            return cmd_eigen_single(dowq::CosetParams::make(er, ep, en, ee, em), false, budget, eig_out);
        }
        if (ser->parsed()) {
            if (dde->parsed()) return cmd_series("mu-dde", sr, sd, se, sT, ser_out);
            return cmd_series("mu-dd0", sr, sd, 0, sT, ser_out);
        }
        if (shl->parsed())
            return cmd_shell_check(parse_family(hn, hr, hd, hk, h_j), ordering, budget, shl_out);
        if (hom->parsed()) return cmd_homology(parse_family(on, orr, od, ok, o_j), proper, hom_out);
    } catch (const dowq::ExceptionalCosetUnsupported& ex) {
        std::cerr << ex.what() << "\n";
        return kExitUnsupported;
    } catch (const dowq::InvalidSpec& ex) {
        std::cerr << ex.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& ex) {
        std::cerr << ex.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << "\n";
        return 1;
    }
    return kExitInvalid;
}
