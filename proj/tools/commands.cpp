#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "dyadic/bong.hpp"
#include "dyadic/jordan.hpp"
#include "dyadic/oracle.hpp"
#include "dyadic/repr.hpp"

namespace dyadic::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

Json ints(const std::vector<int>& v) {
    Json j = Json::array();
    for (int x : v) j.push_back(x);
    return j;
}

Json vals(const std::vector<Val>& v) {
    Json j = Json::array();
    for (Val x : v) j.push_back(val_json(x));
    return j;
}

Json elems(const Vec& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(x.str());
    return j;
}

Json matrix_json(const Matrix& A) {
    Json j = Json::array();
    for (const auto& r : A) j.push_back(elems(r));
    return j;
}

GoodBong bong_of(const LatticeInput& in, const Options& o) {
    if (in.bong) return *in.bong;
    BongOptions b;
    b.seed = o.seed;
    return good_bong(in.lattice, b);
}

SearchConfig search_config(const Options& o) {
    SearchConfig c;
    c.precision = o.precision;
    c.max_nodes = o.budget;
    return c;
}

void same_field(const LatticeInput& a, const LatticeInput& b) {
    if (!(a.field == b.field)) throw InvalidInput("inputs are over different fields: " + a.field.name() + " and " + b.field.name());
}

// R_{i+1} - R_i and d(-a_{i+1}/a_i) against the two inequalities that cut out the value set of binary lattices
Json boundary_json(const GoodBong& B) {
    Json j = Json::array();
    int e = B.field().e();
    for (int i = 1; i < B.rank(); ++i) {
        FieldElem q = B.a()[i] / B.a()[i - 1];
        int o = q.ord();
        Val d = quad_defect(-q);
        Json f;
        f["i"] = i;
        f["ord"] = o;
        f["defect_neg"] = val_json(d);
        f["ord_floor"] = o + 2 * e == 0;
        f["defect_floor"] = Val::of(o) + d == Val::of(0);
        j.push_back(f);
    }
    return j;
}

Json lattice_invariants(const LatticeInput& in, const GoodBong& B) {
    InvariantPack P = invariants(B);
    Json j;
    j["rank"] = B.rank();
    j["good_bong"] = elems(B.a());
    j["R"] = ints(P.R);
    j["alpha"] = vals(P.alpha);
    j["W"] = vals(P.W);
    QSpace V = B.space(B.rank());
    j["space"] = {{"dim", V.dim()}, {"det", V.det().str()}, {"hasse", V.hasse()}};
    if (in.lattice.rank() > 0) {
        j["vol_ord"] = in.lattice.vol_ord();
        j["scale_ord"] = in.lattice.scale_ord();
        j["norm_ord"] = in.lattice.norm_ord();
    }
    return j;
}

Json jordan_json(const JordanSplitting& J) {
    Json j;
    j["t"] = J.t();
    j["r"] = ints(J.r);
    j["u"] = ints(J.u);
    j["n"] = ints(J.n);
    Json comps = Json::array();
    for (const auto& C : J.comps)
        comps.push_back({{"scale", C.scale}, {"dim", C.dim}, {"norm_ord", C.norm_ord}, {"blocks", ints(C.block_sizes)}});
    j["components"] = comps;
    Json ap = Json::array();
    for (int i = 0; i <= J.rank(); ++i) {
        Approximation A = approximate_V(J, i);
        ap.push_back({{"i", i}, {"X", A.X.str()}, {"V", A.V ? A.V->str() : ""}, {"case", A.lemma_case}});
    }
    j["approximations"] = ap;
    return j;
}

Json decision_json(const Decision& D, const char* yes, const char* no) {
    Json j;
    j["verdict"] = D.holds ? yes : no;
    if (D.holds) j["failing"] = nullptr;
    else j["failing"] = {{"condition", D.failing}, {"index", D.witness}, {"inequality", D.detail}};
    j["trace"] = D.trace;
    return j;
}

const char* oracle_verdict(OracleVerdict v) {
    switch (v) {
        case OracleVerdict::yes: return "represents";
        case OracleVerdict::no: return "fails";
        default: return "inconclusive";
    }
}

void check_expect(const Options& o, const std::vector<std::string>& allowed) {
    if (!o.expect) return;
    if (std::find(allowed.begin(), allowed.end(), *o.expect) == allowed.end()) {
        std::string s;
        for (const auto& a : allowed) s += (s.empty() ? "" : ", ") + a;
        throw InvalidInput("--expect must be one of " + s);
    }
}

int expect_exit(const Options& o, const std::string& verdict) { return o.expect && *o.expect != verdict ? exit_mismatch : exit_ok; }

Json base_report(const char* cmd, Json inputs, const Options& o) {
    Json r;
    r["command"] = cmd;
    r["inputs"] = std::move(inputs);
    r["inputs"]["flags"] = flags_json(o);
    return r;
}

// random unimodular integer matrix: unit-triangular factors and a permutation
Matrix shuffle_basis(std::mt19937_64& g, const Field& F, int n) {
    Matrix U = identity(F, n), L = identity(F, n);
    std::uniform_int_distribution<long> c(-3, 3);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            U[i][j] = F.integer(c(g));
            L[j][i] = F.integer(c(g));
        }
    Matrix T = matmul(U, L);
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), g);
    Matrix P(n, Vec(n, F.zero()));
    for (int i = 0; i < n; ++i) P[i][p[i]] = F.one();
    return matmul(T, P);
}

struct OracleRun {
    OracleResult res;
    bool exhausted = false;
    std::string message;
};

OracleRun run_oracle(const Lattice& N, const Lattice& M, const Options& o) {
    OracleRun r;
    try {
        if (o.seed == 0) {
            r.res = oracle_represents(N, M, search_config(o));
            return r;
        }
        std::mt19937_64 g(o.seed);
        const Field& F = M.field();
        Matrix PM = shuffle_basis(g, F, M.rank()), PN = shuffle_basis(g, F, N.rank());
        r.res = oracle_represents(N.transform(PN), M.transform(PM), search_config(o));
        if (r.res.witness) r.res.witness = matmul(matmul(PM, *r.res.witness), inverse(F, PN));
    } catch (const BudgetExhausted& e) {
        r.exhausted = true;
        r.message = e.what();
        r.res.verdict = OracleVerdict::inconclusive;
    }
    return r;
}

Json oracle_json(const OracleRun& r) {
    Json j;
    j["verdict"] = r.exhausted ? "budget-exhausted" : oracle_verdict(r.res.verdict);
    if (r.exhausted) {
        j["message"] = r.message;
        return j;
    }
    j["depth"] = r.res.depth;
    j["certify_depth"] = r.res.certify_depth;
    j["nodes"] = r.res.nodes;
    j["witness"] = r.res.witness ? matrix_json(*r.res.witness) : Json(nullptr);
    return j;
}

Options flags_from_json(const Json& f) {
    Options o;
    o.precision = f.at("precision").get<int>();
    o.jordan = f.at("jordan").get<bool>();
    o.oracle = f.at("oracle").get<bool>();
    o.seed = f.at("seed").get<uint64_t>();
    o.budget = f.at("budget").get<long>();
    if (!f.at("expect").is_null()) o.expect = f.at("expect").get<std::string>();
    return o;
}

LatticeInput from_echo(const Json& j) { return parse_lattice(j.dump()); }

}  // namespace

Json val_json(Val v) {
    if (v.is_inf()) return "inf";
    if (v.is_neg_inf()) return "-inf";
    if (v.is_integer()) return v.to_int();
    return static_cast<double>(v.twice()) / 2.0;
}

Json echo(const LatticeInput& in) {
    Json j;
    j["field"] = in.field.name();
    if (in.bong) j["bong"] = elems(in.bong->a());
    else j["gram"] = matrix_json(*in.gram);
    return j;
}

Json flags_json(const Options& o) {
    Json j;
    j["precision"] = o.precision;
    j["jordan"] = o.jordan;
    j["oracle"] = o.oracle;
    j["seed"] = o.seed;
    j["budget"] = o.budget;
    j["expect"] = o.expect ? Json(*o.expect) : Json(nullptr);
    return j;
}

Outcome cmd_invariants(const LatticeInput& L, const Options& o) {
    auto t0 = Clock::now();
    Outcome out;
    Json& r = out.report = base_report("invariants", {{"lattice", echo(L)}}, o);
    GoodBong B = bong_of(L, o);
    r["field"] = {{"name", L.field.name()}, {"e", L.field.e()}, {"f", L.field.f()}};
    r["invariants"] = lattice_invariants(L, B);
    r["boundary"] = boundary_json(B);
    r["jordan"] = L.lattice.rank() ? jordan_json(jordan_split(L.lattice)) : Json(nullptr);
    if (o.timing) r["timing"] = {{"ms", ms_since(t0)}};
    return out;
}

Outcome cmd_decide(const LatticeInput& N, const LatticeInput& M, const Options& o) {
    auto t0 = Clock::now();
    same_field(N, M);
    check_expect(o, {"represents", "fails"});
    Outcome out;
    Json& r = out.report = base_report("decide", {{"N", echo(N)}, {"M", echo(M)}}, o);
    GoodBong BN = bong_of(N, o), BM = bong_of(M, o);
    Decision D = repr_decide(BN, BM);
    r["invariants"] = {{"N", lattice_invariants(N, BN)}, {"M", lattice_invariants(M, BM)}, {"A", vals(D.A)},
                       {"tail", D.tailA ? val_json(*D.tailA) : Json(nullptr)}};
    r["decision"] = decision_json(D, "represents", "fails");
    std::string verdict = D.holds ? "represents" : "fails";
    r["verdict"] = verdict;
    out.exit_code = expect_exit(o, verdict);
    if (o.jordan) {
        BongOptions bo;
        bo.seed = o.seed;
        Decision J = repr_decide_jordan(N.lattice, M.lattice, bo);
        Json j = decision_json(J, "represents", "fails");
        bool agree = J.holds == D.holds && J.failing == D.failing && J.witness == D.witness;
        j["agree"] = agree;
        j["status"] = agree ? "paths agree" : "paths disagree";
        r["jordan"] = j;
        if (!agree) out.exit_code = exit_mismatch;
    }
    if (o.oracle) {
        OracleRun R = run_oracle(N.lattice, M.lattice, o);
        Json j = oracle_json(R);
        bool decided = !R.exhausted && R.res.verdict != OracleVerdict::inconclusive;
        j["agree"] = decided ? Json((R.res.verdict == OracleVerdict::yes) == D.holds) : Json(nullptr);
        r["oracle"] = j;
        if (decided && (R.res.verdict == OracleVerdict::yes) != D.holds) out.exit_code = exit_mismatch;
        else if (!decided && out.exit_code == exit_ok) out.exit_code = exit_exhausted;
    }
    if (o.timing) r["timing"] = {{"ms", ms_since(t0)}};
    return out;
}

Outcome cmd_classify(const LatticeInput& L, const LatticeInput& K, const Options& o) {
    auto t0 = Clock::now();
    same_field(L, K);
    check_expect(o, {"isometric", "not-isometric"});
    Outcome out;
    Json& r = out.report = base_report("classify", {{"L", echo(L)}, {"K", echo(K)}}, o);
    GoodBong BL = bong_of(L, o), BK = bong_of(K, o);
    Decision D = classify(BL, BK);
    r["invariants"] = {{"L", lattice_invariants(L, BL)}, {"K", lattice_invariants(K, BK)}};
    r["decision"] = decision_json(D, "isometric", "not-isometric");
    std::string verdict = D.holds ? "isometric" : "not-isometric";
    r["verdict"] = verdict;
    out.exit_code = expect_exit(o, verdict);
    if (o.jordan) {
        // isometry as representation both ways at equal rank and volume, on the Jordan path
        BongOptions bo;
        bo.seed = o.seed;
        bool same = L.lattice.rank() == K.lattice.rank() &&
                    (L.lattice.rank() == 0 || L.lattice.vol_ord() == K.lattice.vol_ord());
        bool iso = same && repr_decide_jordan(L.lattice, K.lattice, bo).holds && repr_decide_jordan(K.lattice, L.lattice, bo).holds;
        r["jordan"] = {{"verdict", iso ? "isometric" : "not-isometric"}, {"agree", iso == D.holds}};
        if (iso != D.holds) out.exit_code = exit_mismatch;
    }
    if (o.oracle) {
        OracleVerdict v = OracleVerdict::inconclusive;
        bool exhausted = false;
        try {
            v = oracle_isometric(L.lattice, K.lattice, search_config(o));
        } catch (const BudgetExhausted&) {
            exhausted = true;
        }
        bool decided = !exhausted && v != OracleVerdict::inconclusive;
        const char* s = exhausted ? "budget-exhausted" : v == OracleVerdict::yes ? "isometric" : v == OracleVerdict::no ? "not-isometric" : "inconclusive";
        r["oracle"] = {{"verdict", s}, {"agree", decided ? Json((v == OracleVerdict::yes) == D.holds) : Json(nullptr)}};
        if (decided && (v == OracleVerdict::yes) != D.holds) out.exit_code = exit_mismatch;
        else if (!decided && out.exit_code == exit_ok) out.exit_code = exit_exhausted;
    }
    if (o.timing) r["timing"] = {{"ms", ms_since(t0)}};
    return out;
}

Outcome cmd_oracle(const LatticeInput& N, const LatticeInput& M, const Options& o) {
    auto t0 = Clock::now();
    same_field(N, M);
    check_expect(o, {"represents", "fails"});
    Outcome out;
    Json& r = out.report = base_report("oracle", {{"N", echo(N)}, {"M", echo(M)}}, o);
    OracleRun R = run_oracle(N.lattice, M.lattice, o);
    r["oracle"] = oracle_json(R);
    if (R.res.witness) r["oracle"]["certified"] = certify_witness(N.lattice, M.lattice, *R.res.witness);
    std::string verdict = r["oracle"]["verdict"];
    r["verdict"] = verdict;
    if (R.exhausted || R.res.verdict == OracleVerdict::inconclusive) out.exit_code = exit_exhausted;
    else out.exit_code = expect_exit(o, verdict);
    if (o.jordan || o.oracle) {
        GoodBong BN = bong_of(N, o), BM = bong_of(M, o);
        Decision D = repr_decide(BN, BM);
        bool decided = out.exit_code != exit_exhausted;
        r["theorem"] = decision_json(D, "represents", "fails");
        r["theorem"]["agree"] = decided ? Json((R.res.verdict == OracleVerdict::yes) == D.holds) : Json(nullptr);
        if (decided && (R.res.verdict == OracleVerdict::yes) != D.holds) out.exit_code = exit_mismatch;
    }
    if (o.timing) r["timing"] = {{"ms", ms_since(t0)}};
    return out;
}

namespace {

struct CampaignRecord {
    std::string verdict, failing, oracle, jordan;
    bool constructed = false;
    bool disagree = false;
    Json report;  // decide report, kept for disagreements
    std::string N_text, M_text;
    double ms = 0;
};

CampaignRecord run_instance(const Field& F, const CampaignParams& p, const Options& o, int idx) {
    CampaignRecord rec;
    auto t0 = Clock::now();
    std::seed_seq sq{static_cast<uint32_t>(o.seed), static_cast<uint32_t>(o.seed >> 32), static_cast<uint32_t>(idx)};
    std::mt19937_64 g(sq);
    InstanceParams ip;
    ip.max_rank = p.max_rank;
    ip.vmin = p.vmin;
    ip.vmax = p.vmax;
    ip.sublattice_fraction = p.sublattice_fraction;
    Instance I = random_instance(g, F, ip);
    rec.constructed = I.constructed;
    LatticeInput N{F, I.N.gram(), std::nullopt, I.N}, M{F, I.M.gram(), std::nullopt, I.M};
    rec.N_text = to_text(N);
    rec.M_text = to_text(M);
    Options d = o;
    d.oracle = true;
    d.expect.reset();
    d.timing = false;
    Outcome out = cmd_decide(N, M, d);
    rec.verdict = out.report["verdict"];
    rec.failing = out.report["decision"]["failing"].is_null() ? "" : out.report["decision"]["failing"]["condition"].get<std::string>();
    rec.oracle = out.report["oracle"]["verdict"];
    if (o.jordan) rec.jordan = out.report["jordan"]["agree"].get<bool>() ? "agree" : "disagree";
    rec.disagree = out.exit_code == exit_mismatch || (rec.constructed && rec.verdict != "represents");
    if (rec.disagree) rec.report = out.report;
    rec.ms = ms_since(t0);
    return rec;
}

}  // namespace

Outcome cmd_campaign(const CampaignParams& p, const Options& o) {
    auto t0 = Clock::now();
    Field F = Field::parse(p.field);
    if (p.count < 0) throw InvalidInput("--count must be nonnegative");
    if (p.max_rank < 1 || p.max_rank > 4) throw InvalidInput("--max-rank must be in 1..4");
    if (p.jobs < 1) throw InvalidInput("--jobs must be positive");
    std::vector<CampaignRecord> recs(p.count);
    std::vector<std::string> errors(p.count);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i; (i = next++) < p.count;) {
            try {
                recs[i] = run_instance(F, p, o, i);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    int jobs = std::min(p.jobs, std::max(p.count, 1));
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    Outcome out;
    Json& r = out.report;
    r["command"] = "campaign";
    r["inputs"] = {{"field", F.name()},     {"count", p.count}, {"max_rank", p.max_rank}, {"vmin", p.vmin},
                   {"vmax", p.vmax},        {"sublattice_fraction", p.sublattice_fraction},
                   {"flags", flags_json(o)}};
    std::map<std::string, int> verdicts, failing, oracle, jordan;
    int constructed = 0, disagreements = 0;
    Json dis = Json::array(), errs = Json::array(), exhausted = Json::array();
    for (int i = 0; i < p.count; ++i) {
        if (!errors[i].empty()) {
            errs.push_back({{"index", i}, {"error", errors[i]}});
            continue;
        }
        const auto& c = recs[i];
        ++verdicts[c.verdict];
        if (!c.failing.empty()) ++failing[c.failing];
        ++oracle[c.oracle];
        if (o.jordan) ++jordan[c.jordan];
        constructed += c.constructed;
        if (c.oracle == "budget-exhausted" || c.oracle == "inconclusive") exhausted.push_back(i);
        if (c.disagree) {
            ++disagreements;
            dis.push_back(i);
        }
    }
    Json s;
    s["instances"] = p.count;
    s["constructed"] = constructed;
    s["verdicts"] = verdicts;
    s["failing"] = failing;
    s["oracle"] = oracle;
    if (o.jordan) s["jordan"] = jordan;
    s["disagreements"] = disagreements;
    s["disagreement_indices"] = dis;
    s["oracle_unresolved"] = exhausted;
    s["errors"] = errs;
    r["summary"] = s;
    if (p.out) {
        namespace fs = std::filesystem;
        fs::create_directories(*p.out);
        for (const auto& jv : dis) {
            int i = jv.get<int>();
            std::string base = (fs::path(*p.out) / ("instance_" + std::to_string(i))).string();
            const auto& c = recs[i];
            std::ofstream(base + ".json") << c.report.dump(2) << "\n";
            std::ofstream(base + "_N.txt") << c.N_text;
            std::ofstream(base + "_M.txt") << c.M_text;
        }
    }
    if (o.timing) {
        double tot = 0;
        for (const auto& c : recs) tot += c.ms;
        r["timing"] = {{"ms", ms_since(t0)}, {"instance_ms_total", tot}};
    }
    if (disagreements) out.exit_code = exit_mismatch;
    else if (!errs.empty()) out.exit_code = exit_exhausted;
    return out;
}

Outcome cmd_replay(const Json& report) {
    try {
        std::string cmd = report.at("command");
        const Json& in = report.at("inputs");
        Options o = flags_from_json(in.at("flags"));
        if (cmd == "invariants") return cmd_invariants(from_echo(in.at("lattice")), o);
        if (cmd == "decide") return cmd_decide(from_echo(in.at("N")), from_echo(in.at("M")), o);
        if (cmd == "classify") return cmd_classify(from_echo(in.at("L")), from_echo(in.at("K")), o);
        if (cmd == "oracle") return cmd_oracle(from_echo(in.at("N")), from_echo(in.at("M")), o);
        if (cmd == "campaign") {
            CampaignParams p;
            p.field = in.at("field");
            p.count = in.at("count");
            p.max_rank = in.at("max_rank");
            p.vmin = in.at("vmin");
            p.vmax = in.at("vmax");
            p.sublattice_fraction = in.at("sublattice_fraction");
            return cmd_campaign(p, o);
        }
        throw InvalidInput("unknown command in report: " + cmd);
    } catch (const Json::exception& e) {
        throw InvalidInput(std::string("malformed report: ") + e.what());
    }
}

}  // namespace dyadic::cli
