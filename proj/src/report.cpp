#include "emn/report.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "emn/coeffs.hpp"
#include "emn/relations.hpp"
#include "emn/screenings.hpp"

namespace emn {

namespace {

using nlohmann::json;

struct CheckResult {
    std::string id;
    json params;
    bool pass = true;
    long checks = 0;
    long failures = 0;
    std::vector<std::string> residuals;  // first failing residual per check
    double ms = 0;
};

json to_json(const CheckResult& c) {
    return json{{"id", c.id},
                {"params", c.params},
                {"status", c.pass ? "pass" : "fail"},
                {"checks", c.checks},
                {"failures", c.failures},
                {"residuals", c.residuals},
                {"time_ms", c.ms}};
}

CheckResult from_relation(const RelationReport& r, const json& params) {
    CheckResult c;
    c.id = r.id;
    c.params = params;
    if (r.i >= 0) c.params["i"] = r.i;
    if (r.j >= 0) c.params["j"] = r.j;
    c.pass = r.applicable && r.pass;
    c.checks = r.checks;
    c.failures = r.failures;
    if (!r.first_failure.empty()) c.residuals.push_back(r.first_failure);
    c.ms = r.ms;
    return c;
}

CheckResult from_screening(const ScreeningReport& r, const json& params) {
    CheckResult c;
    c.id = r.id;
    c.params = params;
    c.pass = r.pass;
    c.checks = r.checks;
    c.failures = r.failures;
    if (!r.first_failure.empty()) c.residuals.push_back(r.first_failure);
    c.ms = r.ms;
    return c;
}

CheckResult from_coeff(const CoeffReport& r, const json& params) {
    CheckResult c;
    c.id = r.id;
    c.params = params;
    c.pass = r.pass;
    c.checks = r.checks;
    c.failures = r.failures;
    if (!r.first_failure.empty()) c.residuals.push_back(r.first_failure);
    c.ms = r.ms;
    return c;
}

bool filter_allows(const std::string& filter, const std::string& name) {
    if (filter.empty() || filter == "all") return true;
    std::size_t pos = 0;
    while (pos <= filter.size()) {
        std::size_t comma = filter.find(',', pos);
        if (comma == std::string::npos) comma = filter.size();
        if (filter.substr(pos, comma - pos) == name) return true;
        pos = comma + 1;
    }
    return false;
}

// bounded worker pool over independent check tasks; single aggregation point
std::vector<CheckResult> run_tasks(
    std::vector<std::function<std::vector<CheckResult>()>> tasks, int jobs) {
    std::vector<std::vector<CheckResult>> slots(tasks.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) slots[i] = tasks[i]();
    } else {
        std::mutex mu;
        std::size_t next = 0;
        auto worker = [&] {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lk(mu);
                    if (next >= tasks.size()) return;
                    i = next++;
                }
                slots[i] = tasks[i]();
            }
        };
        std::vector<std::thread> pool;
        int nt = std::min<int>(jobs, int(tasks.size()));
        pool.reserve(std::size_t(nt));
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::vector<CheckResult> out;
    for (auto& s : slots)
        for (auto& c : s) out.push_back(std::move(c));
    return out;
}

json module_params(const SuiteConfig& cfg) {
    return json{{"m", cfg.m}, {"n", cfg.n}, {"weight", cfg.weight},
                {"D", cfg.D}, {"B", cfg.B}, {"W", cfg.W}};
}

std::vector<CheckResult> cartan_checks(const SuiteConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    SymmetryReport rep = check_diagram_symmetries(cfg.m, cfg.n);
    RootDatum rd = build_root_datum(cfg.m, cfg.n);
    CheckResult c;
    c.id = "cartan-invariants";
    c.params = {{"m", cfg.m}, {"n", cfg.n}};
    auto req = [&](bool ok, const std::string& what) {
        ++c.checks;
        if (ok) return;
        c.pass = false;
        ++c.failures;
        c.residuals.push_back(what);
    };
    req(rep.ahat_symmetric, "A-hat not symmetric");
    req(rep.mhat_skew, "M-hat not skew");
    req(rep.rows_sum_zero, "A-hat rows do not sum to zero");
    req(rep.sigmaA && rep.sigmaM, "sigma index symmetry broken");
    req(rep.tauA && rep.tauM, "tau index symmetry broken");
    req(rd.detAhat() == Int(0), "det(A-hat) != 0");
    Int d = rd.detA();
    Int want(cfg.m - cfg.n);
    req(d == want || d == -want, "|det(A)| != |m-n|");
    c.ms = std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
               .count();
    return {c};
}

std::vector<CheckResult> contraction_checks(const SuiteConfig& cfg,
                                            const WeightSpec& ws) {
    FockModule mod = make_module(cfg.m, cfg.n, ws);
    std::vector<PrimitiveId> prims;
    for (int i = 0; i < mod.rd.N; ++i) {
        prims.push_back({PrimitiveId::GammaP, i});
        prims.push_back({PrimitiveId::GammaM, i});
    }
    for (int j = mod.rd.m; j < mod.rd.N; ++j) {
        prims.push_back({PrimitiveId::Cp, j});
        prims.push_back({PrimitiveId::Cm, j});
    }
    std::vector<CheckResult> out;
    for (const PrimitiveId& x : prims) {
        for (const PrimitiveId& y : prims) {
            auto t0 = std::chrono::steady_clock::now();
            ContractionReport r = verify_contraction(mod, x, y, cfg.R);
            CheckResult c;
            c.id = "contraction";
            c.params = {{"m", cfg.m},       {"n", cfg.n},
                        {"x_kind", int(x.kind)}, {"x_index", x.index},
                        {"y_kind", int(y.kind)}, {"y_index", y.index},
                        {"order", cfg.R}};
            c.checks = 4;
            c.pass = r.ok();
            if (!r.zexp_ok) { ++c.failures; c.residuals.push_back("z-exponent mismatch"); }
            if (!r.const_ok) { ++c.failures; c.residuals.push_back("constant part mismatch"); }
            if (!r.series_ok) { ++c.failures; c.residuals.push_back("series mismatch"); }
            if (!r.exchange_ok) { ++c.failures; c.residuals.push_back("exchange cocycle mismatch"); }
            c.ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<CheckResult> relation_checks(const SuiteConfig& cfg, const WeightSpec& ws,
                                         int jobs) {
    // group the relation families into independent tasks, each with its own
    // verifier (tasks are pure; caches are per-task)
    json params = module_params(cfg);
    std::vector<std::vector<RelationId>> families = {
        {RelationId::CK, RelationId::KK1, RelationId::KK2},
        {RelationId::KE, RelationId::KF},
        {RelationId::EF},
        {RelationId::EE0, RelationId::EEquad, RelationId::FF0, RelationId::FFquad},
        {RelationId::HE, RelationId::HF, RelationId::HH},
        {RelationId::Serre1, RelationId::Serre2, RelationId::Serre3,
         RelationId::Serre4, RelationId::Serre5, RelationId::Serre6,
         RelationId::Serre7, RelationId::Serre8},
    };
    std::vector<std::function<std::vector<CheckResult>()>> tasks;
    for (const auto& fam : families) {
        std::vector<RelationId> sel;
        for (RelationId id : fam)
            if (filter_allows(cfg.filter, relation_name(id))) sel.push_back(id);
        if (sel.empty()) continue;
        tasks.push_back([cfg, ws, sel, params] {
            RelationVerifier ver(cfg.m, cfg.n, ws, cfg.D, cfg.B, cfg.W);
            std::vector<CheckResult> out;
            const int N = ver.mod().rd.N;
            for (RelationId id : sel) {
                bool pairwise = id != RelationId::Serre3 && id != RelationId::Serre4 &&
                                id != RelationId::Serre5 && id != RelationId::Serre6 &&
                                id != RelationId::Serre7 && id != RelationId::Serre8;
                if (pairwise) {
                    for (int i = 0; i < N; ++i)
                        for (int j = 0; j < N; ++j) {
                            if (!ver.applicable(id, i, j)) continue;
                            out.push_back(from_relation(ver.verify(id, i, j), params));
                        }
                } else if (id == RelationId::Serre3 || id == RelationId::Serre4) {
                    for (int i = 0; i < N; ++i) {
                        if (!ver.applicable(id, i, -1)) continue;
                        out.push_back(from_relation(ver.verify(id, i), params));
                    }
                } else {
                    if (!ver.applicable(id, -1, -1)) continue;
                    out.push_back(from_relation(ver.verify(id, -1, -1), params));
                }
            }
            return out;
        });
    }
    // level and admissibility ride along as their own task
    tasks.push_back([cfg, ws, params] {
        RelationVerifier ver(cfg.m, cfg.n, ws, cfg.D, cfg.B, cfg.W);
        std::vector<CheckResult> out;
        out.push_back(from_relation(ver.verify_level(), params));
        out.push_back(from_relation(ver.verify_admissibility(), params));
        return out;
    });
    return run_tasks(std::move(tasks), jobs);
}

std::vector<CheckResult> screening_checks(const SuiteConfig& cfg,
                                          const WeightSpec& ws) {
    ScreeningVerifier sv(cfg.m, cfg.n, ws, cfg.D, cfg.B, cfg.W);
    json params = module_params(cfg);
    std::vector<CheckResult> out;
    out.push_back(from_screening(sv.verify_system(), params));
    out.push_back(from_screening(sv.verify_module_commutation(), params));
    return out;
}

std::vector<CheckResult> coeff_checks(const SuiteConfig& cfg, int jobs) {
    RootDatum rd = build_root_datum(cfg.m, cfg.n);
    json params = {{"m", cfg.m}, {"n", cfg.n}, {"rmax", cfg.rmax}, {"order", cfg.R}};
    std::vector<std::function<std::vector<CheckResult>()>> tasks;
    tasks.push_back([cfg, rd, params] {
        std::vector<CheckResult> out;
        auto t0 = std::chrono::steady_clock::now();
        CheckResult c;
        c.id = "toroidal-determinant";
        c.params = params;
        for (long r = 1; r <= cfg.rmax; ++r) {
            DetResult d = toroidal_det(r, rd);
            ++c.checks;
            if (!d.match() || d.det.is_zero()) {
                c.pass = false;
                ++c.failures;
                c.residuals.push_back("r=" + std::to_string(r) +
                                      " determinant mismatch: " + d.det.str());
            }
        }
        c.ms = std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
        out.push_back(std::move(c));
        out.push_back(from_coeff(verify_coeff_invariants(cfg.rmax, rd), params));
        out.push_back(from_coeff(verify_htilde0(cfg.rmax, rd), params));
        return out;
    });
    for (const std::string& id : exp_identity_ids()) {
        tasks.push_back([cfg, rd, params, id] {
            return std::vector<CheckResult>{
                from_coeff(verify_exp_identity(id, cfg.R, rd), params)};
        });
    }
    return run_tasks(std::move(tasks), jobs);
}

}  // namespace

bool parse_weight(const std::string& token, WeightSpec& spec) {
    if (token == "L0") {
        spec = WeightSpec{WeightSpec::L0, 0, 0};
        return true;
    }
    if (token.size() > 1 && token[0] == 'L') {
        try {
            std::size_t used = 0;
            int i = std::stoi(token.substr(1), &used);
            if (used + 1 != token.size() || i < 0) return false;
            spec = i == 0 ? WeightSpec{WeightSpec::L0, 0, 0}
                          : WeightSpec{WeightSpec::Li, i, 0};
            return true;
        } catch (...) {
            return false;
        }
    }
    if (token.rfind("aLm:", 0) == 0) {
        try {
            std::size_t used = 0;
            int a = std::stoi(token.substr(4), &used);
            if (used + 4 != token.size()) return false;
            spec = WeightSpec{WeightSpec::aLm, 0, a};
            return true;
        } catch (...) {
            return false;
        }
    }
    return false;
}

std::string validate_config(const SuiteConfig& cfg) {
    if (cfg.m < 1 || cfg.n < 1) return "m and n must be >= 1";
    if (cfg.m == cfg.n) return "m == n is not supported";
    if (cfg.D < 0 || cfg.B < 0 || cfg.W < 0 || cfg.R < 0 || cfg.rmax < 0)
        return "truncation parameters must be nonnegative";
    if (cfg.jobs < 1) return "jobs must be >= 1";
    WeightSpec ws;
    if (!parse_weight(cfg.weight, ws)) return "unparseable weight token: " + cfg.weight;
    if (ws.kind == WeightSpec::Li && ws.i >= cfg.m + cfg.n)
        return "weight index out of range";
    static const std::vector<std::string> suites = {
        "cartan", "contractions", "verify", "screenings", "coeffs", "all"};
    for (const auto& s : suites)
        if (cfg.suite == s) return "";
    return "unknown suite: " + cfg.suite;
}

int run_suite(const SuiteConfig& cfg) {
    WeightSpec ws;
    parse_weight(cfg.weight, ws);

    std::vector<CheckResult> checks;
    auto append = [&](std::vector<CheckResult> v) {
        for (auto& c : v) checks.push_back(std::move(c));
    };
    if (cfg.suite == "cartan" || cfg.suite == "all") append(cartan_checks(cfg));
    if (cfg.suite == "contractions" || cfg.suite == "all")
        append(contraction_checks(cfg, ws));
    if (cfg.suite == "verify" || cfg.suite == "all")
        append(relation_checks(cfg, ws, cfg.jobs));
    if (cfg.suite == "screenings" || cfg.suite == "all")
        append(screening_checks(cfg, ws));
    if (cfg.suite == "coeffs" || cfg.suite == "all") append(coeff_checks(cfg, cfg.jobs));

    long passed = 0, failed = 0;
    for (const auto& c : checks) (c.pass ? passed : failed)++;

    json rep;
    rep["config"] = {{"suite", cfg.suite}, {"m", cfg.m},       {"n", cfg.n},
                     {"weight", cfg.weight}, {"D", cfg.D},     {"B", cfg.B},
                     {"W", cfg.W},         {"R", cfg.R},       {"rmax", cfg.rmax},
                     {"filter", cfg.filter}, {"jobs", cfg.jobs}};
    rep["checks"] = json::array();
    for (const auto& c : checks) rep["checks"].push_back(to_json(c));
    rep["summary"] = {{"total", long(checks.size())},
                      {"passed", passed},
                      {"failed", failed},
                      {"status", failed == 0 ? "pass" : "fail"}};

    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << "cannot write report to " << cfg.out << "\n";
            return 2;
        }
        f << rep.dump(2) << "\n";
    }
    std::cout << "suite " << cfg.suite << ": " << passed << "/" << checks.size()
              << " checks passed";
    if (failed) {
        std::cout << ", " << failed << " FAILED\n";
        for (const auto& c : checks) {
            if (c.pass) continue;
            std::cout << "  FAIL " << c.id;
            if (!c.residuals.empty()) std::cout << ": " << c.residuals.front();
            std::cout << "\n";
        }
    } else {
        std::cout << "\n";
    }
    return failed == 0 ? 0 : 1;
}

}  // namespace emn
