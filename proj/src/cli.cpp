#include "turnpike/cli.hpp"

#include "turnpike/bellman.hpp"
#include "turnpike/conditions.hpp"
#include "turnpike/corpus.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/io.hpp"
#include "turnpike/partition.hpp"
#include "turnpike/small_discount.hpp"
#include "turnpike/turnpike.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

namespace turnpike {
namespace {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& r) { return to_string(r); }

Json point_json(const IsolatedRoot& p) {
    Json j;
    j["value"] = p.to_string();
    j["exact"] = p.is_exact();
    j["approx"] = p.approx();
    return j;
}

Json rules_json(const Mdp& mdp, const RuleSet& rules) {
    Json j = Json::array();
    for (const auto& r : rules) j.push_back(rule_label(mdp, r));
    return j;
}

Json rule_json(const Mdp& mdp, const DecisionRule& rule) {
    Json j;
    j["label"] = rule_label(mdp, rule);
    Json actions = Json::object();
    for (std::size_t x = 0; x < mdp.num_states(); ++x) actions[mdp.states[x]] = mdp.actions[x][rule.choice[x]];
    j["actions"] = std::move(actions);
    return j;
}

Json vector_json(const Mdp& mdp, const RationalVector& v) {
    Json j = Json::object();
    for (std::size_t x = 0; x < v.size(); ++x) j[mdp.states[x]] = to_string(v[x]);
    return j;
}

std::pair<Rational, Rational> parse_interval(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw InputError("interval must be \"a,b\", got \"" + text + "\"");
    Rational lo = parse_rational(text.substr(0, comma));
    Rational hi = parse_rational(text.substr(comma + 1));
    require_discount(lo);
    require_discount(hi);
    if (lo > hi) throw InputError("interval ends out of order: " + text);
    return {lo, hi};
}

Rational parse_discount(const std::string& text) {
    Rational a = parse_rational(text);
    require_discount(a);
    return a;
}

Json solve_report(const Mdp& mdp, const Rational& alpha) {
    OptimalSets opt = optimal_set(mdp, alpha);
    Json j;
    j["alpha"] = rational_json(alpha);
    j["value"] = vector_json(mdp, opt.value);
    Json actions = Json::object();
    for (std::size_t x = 0; x < mdp.num_states(); ++x) {
        Json list = Json::array();
        for (std::size_t a : opt.optimal.allowed[x]) list.push_back(mdp.actions[x][a]);
        actions[mdp.states[x]] = std::move(list);
    }
    j["optimal_actions"] = std::move(actions);
    j["num_optimal_rules"] = opt.optimal.size();
    j["policy"] = rule_json(mdp, opt.policy);
    j["policy_iterations"] = opt.iterations;
    return j;
}

Json turnpike_report(const Mdp& mdp, const TurnpikeResult& t) {
    Json j;
    j["alpha"] = rational_json(t.alpha);
    j["N"] = t.n_value;
    j["certificate_horizon"] = t.certificate_horizon;
    j["gap"] = t.gap ? Json(to_string(*t.gap)) : Json(nullptr);
    j["value_spread"] = rational_json(t.value_spread);
    j["witness"] = t.witness ? rule_json(mdp, *t.witness) : Json(nullptr);
    return j;
}

Json interval_map_report(const TurnpikeIntervalMap& map) {
    Json j;
    j["lo"] = rational_json(map.lo);
    j["hi"] = rational_json(map.hi);
    j["horizon_used"] = map.horizon_used;
    j["unbounded_suspect"] = map.unbounded_suspect;
    Json intervals = Json::array();
    for (const auto& iv : map.intervals) {
        Json e;
        e["lo"] = point_json(iv.lo);
        e["hi"] = point_json(iv.hi);
        e["lo_closed"] = iv.lo_closed;
        e["hi_closed"] = iv.hi_closed;
        e["N"] = iv.n ? Json(*iv.n) : Json(nullptr);
        intervals.push_back(std::move(e));
    }
    j["intervals"] = std::move(intervals);
    Json points = Json::array();
    for (const auto& d : map.discontinuities) {
        Json e;
        e["point"] = point_json(d.point);
        e["N"] = d.n ? Json(*d.n) : Json(nullptr);
        e["left_discontinuous"] = d.left;
        e["right_discontinuous"] = d.right;
        e["indeterminate"] = d.indeterminate;
        points.push_back(std::move(e));
    }
    j["discontinuities"] = std::move(points);
    return j;
}

Json partition_report(const Mdp& mdp, const PartitionReport& rep) {
    Json j;
    Json points = Json::array();
    for (const auto& p : rep.irregular_points) {
        Json e;
        e["point"] = point_json(p.point);
        e["class"] = p.kind();
        e["is_break"] = p.is_break;
        e["is_touching"] = p.is_touching;
        e["d_minus"] = rules_json(mdp, p.d_minus);
        e["d_at"] = rules_json(mdp, p.d_at);
        e["d_plus"] = rules_json(mdp, p.d_plus);
        points.push_back(std::move(e));
    }
    j["irregular_points"] = std::move(points);
    Json intervals = Json::array();
    for (const auto& iv : rep.intervals) {
        Json e;
        e["lo"] = point_json(iv.lo);
        e["hi"] = point_json(iv.hi);
        e["closed_at_zero"] = iv.closed_at_zero;
        e["sample"] = rational_json(iv.sample);
        e["optimal"] = rules_json(mdp, iv.optimal);
        intervals.push_back(std::move(e));
    }
    j["intervals"] = std::move(intervals);
    j["d_zero"] = rules_json(mdp, rep.d_zero);
    j["blackwell_point"] = point_json(rep.blackwell_point);
    return j;
}

Json small_discount_report(const Mdp& mdp, const FiltrationReport& f, const std::vector<CheckResult>& checks) {
    Json j;
    j["L"] = f.l_value;
    j["H"] = f.h_value;
    j["jump_indices"] = f.jump_indices;
    Json chain = Json::array();
    for (const auto& s : f.f_chain) chain.push_back(rules_json(mdp, s));
    j["F"] = std::move(chain);
    Json xs = Json::array();
    for (const auto& states : f.x_chain) {
        Json e = Json::array();
        for (std::size_t x : states) e.push_back(mdp.states[x]);
        xs.push_back(std::move(e));
    }
    j["X"] = std::move(xs);
    Json cs = Json::array();
    for (const auto& c : f.c_chain) cs.push_back(c ? Json(to_string(*c)) : Json(nullptr));
    j["C"] = std::move(cs);
    Json ds = Json::array();
    for (const auto& d : f.delta_chain) ds.push_back(to_string(d));
    j["Delta"] = std::move(ds);
    Json dts = Json::array();
    for (const auto& d : f.delta_tilde_chain) dts.push_back(to_string(d));
    j["Delta_tilde"] = std::move(dts);
    Json cj = Json::array();
    for (const auto& c : checks) {
        Json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        e["applicable"] = c.applicable;
        e["detail"] = c.detail;
        cj.push_back(std::move(e));
    }
    j["checks"] = std::move(cj);
    return j;
}

Json verdict_json(const Mdp& mdp, const ConditionVerdict& v) {
    Json j;
    j["condition"] = v.condition;
    j["holds"] = to_string(v.holds);
    j["method"] = to_string(v.method);
    j["horizon_used"] = v.horizon_used;
    j["threshold"] = v.threshold ? Json(to_string(*v.threshold)) : Json(nullptr);
    Json pairs = Json::array();
    for (const auto& p : v.pairs) {
        Json e;
        e["phi"] = rule_label(mdp, p.phi);
        e["psi"] = rule_label(mdp, p.psi);
        e["state"] = mdp.states[p.state];
        e["extremum"] = rational_json(p.extremum);
        e["tail_extremum"] = rational_json(p.tail_extremum);
        e["decisive"] = p.decisive;
        pairs.push_back(std::move(e));
    }
    j["pairs"] = std::move(pairs);
    j["witnesses"] = v.witnesses;
    return j;
}

Json side_json(const Mdp& mdp, const SideReport& s) {
    Json j;
    j["bound"] = to_string(s.bound);
    j["reason"] = s.reason;
    j["condition_A"] = verdict_json(mdp, s.condition_a);
    j["condition_B"] = verdict_json(mdp, s.condition_b);
    Json samples = Json::array();
    for (const auto& [a, n] : s.samples) {
        Json e;
        e["alpha"] = rational_json(a);
        e["N"] = n;
        samples.push_back(std::move(e));
    }
    j["samples"] = std::move(samples);
    return j;
}

struct SweepRow {
    Rational alpha;
    std::optional<unsigned> n;
    std::uint64_t num_optimal = 0;
    long interval_id = -1;
    std::optional<std::string> cap;
};

std::vector<SweepRow> sweep(const Mdp& mdp, const Rational& lo, const Rational& hi, std::size_t steps,
                            const Caps& caps) {
    std::vector<SweepRow> rows(steps);
    for (std::size_t i = 0; i < steps; ++i)
        rows[i].alpha = lo + (hi - lo) * ratio(static_cast<long>(i + 1), static_cast<long>(steps + 1));
    const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < steps; i += workers) {
                try {
                    rows[i].n = turnpike_integer(mdp, rows[i].alpha, caps).n_value;
                    rows[i].num_optimal = optimal_set(mdp, rows[i].alpha).optimal.size();
                } catch (const CapExceeded& e) {
                    rows[i].cap = e.cap_name();
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    PartitionReport rep = canonical_partition(mdp, caps);
    for (auto& row : rows) {
        Location loc = locate(rep, row.alpha);
        if (!loc.at_point) row.interval_id = static_cast<long>(loc.index);
    }
    return rows;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact analysis of discounted MDPs: optimal sets, canonical partitions and turnpike horizons."};
    app.require_subcommand(1);
    std::string file, alpha_text, interval_text, point_text, out_path, id;
    std::size_t n_cap = 24, steps = 100, grid = 20, chain = 4;

    auto* validate = app.add_subcommand("validate", "Check an MDP document");
    validate->add_option("file", file, "MDP document")->required();
    auto* solve = app.add_subcommand("solve", "Optimal value and optimal actions at one discount factor");
    solve->add_option("file", file, "MDP document")->required();
    solve->add_option("--alpha", alpha_text, "Discount factor p/q")->required();
    auto* turnpike = app.add_subcommand("turnpike", "Turnpike integer at a point or turnpike intervals of an interval");
    turnpike->add_option("file", file, "MDP document")->required();
    auto* alpha_opt = turnpike->add_option("--alpha", alpha_text, "Discount factor p/q");
    auto* interval_opt = turnpike->add_option("--interval", interval_text, "Closed interval a,b");
    turnpike->add_option("--ncap", n_cap, "Largest first-step horizon searched")->capture_default_str();
    alpha_opt->excludes(interval_opt);
    auto* partition = app.add_subcommand("partition", "Canonical partition of [0,1)");
    partition->add_option("file", file, "MDP document")->required();
    auto* small = app.add_subcommand("small-discount", "Filtration F_n and the small-discount constants");
    small->add_option("file", file, "MDP document")->required();
    small->add_option("--grid", grid, "Samples per spot check");
    auto* conditions = app.add_subcommand("conditions", "Conditions A and B at an irregular point");
    conditions->add_option("file", file, "MDP document")->required();
    conditions->add_option("--point", point_text, "Irregular point p/q")->required();
    auto* sweep_cmd = app.add_subcommand("sweep", "N, optimal-set size and partition interval on a grid");
    sweep_cmd->add_option("file", file, "MDP document")->required();
    sweep_cmd->add_option("--interval", interval_text, "Interval a,b")->required();
    sweep_cmd->add_option("--steps", steps, "Grid points strictly inside the interval")->required();
    sweep_cmd->add_option("--out", out_path, "CSV output path")->required();
    auto* corpus = app.add_subcommand("corpus", "Print a built-in example as an MDP document");
    corpus->add_option("--id", id, "Example id")->required();
    corpus->add_option("--m", chain, "Chain length of ex3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    Json partial;
    try {
        const Caps caps = Caps::from_env();
        if (corpus->parsed()) {
            out << serialize_mdp(build_example(id, chain).mdp);
            return kExitOk;
        }
        if (validate->parsed()) {
            Json j;
            Mdp mdp;
            try {
                mdp = load_mdp_file(file);
            } catch (const InputError& e) {
                j["valid"] = false;
                j["error"] = e.what();
                emit(out, j);
                return kExitInputError;
            }
            j["valid"] = true;
            j["states"] = mdp.num_states();
            j["actions"] = std::accumulate(mdp.actions.begin(), mdp.actions.end(), std::size_t{0},
                                           [](std::size_t s, const auto& a) { return s + a.size(); });
            j["decision_rules"] = mdp.num_rules();
            emit(out, j);
            return kExitOk;
        }
        const Mdp mdp = load_mdp_file(file);
        if (solve->parsed()) {
            emit(out, solve_report(mdp, parse_discount(alpha_text)));
        } else if (turnpike->parsed()) {
            if (!interval_text.empty()) {
                auto [lo, hi] = parse_interval(interval_text);
                auto map = turnpike_intervals(mdp, lo, hi, n_cap, caps);
                emit(out, interval_map_report(map));
                if (map.unbounded_suspect) {
                    err << "N exceeds the horizon cap " << n_cap << " on part of the interval\n";
                    return kExitCapExceeded;
                }
            } else if (!alpha_text.empty()) {
                emit(out, turnpike_report(mdp, turnpike_integer(mdp, parse_discount(alpha_text), caps)));
            } else {
                throw InputError("turnpike needs --alpha or --interval");
            }
        } else if (partition->parsed()) {
            emit(out, partition_report(mdp, canonical_partition(mdp, caps)));
        } else if (small->parsed()) {
            auto f = policy_filtration(mdp, caps);
            emit(out, small_discount_report(mdp, f, small_discount_checks(mdp, grid, caps)));
        } else if (conditions->parsed()) {
            auto rep = boundedness_verdict(mdp, parse_rational(point_text), caps);
            Json j;
            j["point"] = rational_json(rep.point);
            j["left"] = side_json(mdp, rep.left);
            j["right"] = side_json(mdp, rep.right);
            emit(out, j);
        } else if (sweep_cmd->parsed()) {
            auto [lo, hi] = parse_interval(interval_text);
            if (steps == 0) throw InputError("--steps must be positive");
            auto rows = sweep(mdp, lo, hi, steps, caps);
            std::ofstream csv(out_path);
            if (!csv) throw InputError("cannot write " + out_path);
            csv << "alpha,N,num_optimal_rules,in_interval_id\n";
            std::size_t capped = 0;
            for (const auto& r : rows) {
                csv << to_string(r.alpha) << "," << (r.n ? std::to_string(*r.n) : "") << "," << r.num_optimal << ","
                    << r.interval_id << "\n";
                if (r.cap) ++capped;
            }
            Json j;
            j["out"] = out_path;
            j["rows"] = rows.size();
            j["capped_rows"] = capped;
            emit(out, j);
            if (capped) return kExitCapExceeded;
        }
        return kExitOk;
    } catch (const CapExceeded& e) {
        Json j;
        j["error"] = "cap exceeded";
        j["cap"] = e.cap_name();
        j["requested"] = e.requested();
        j["limit"] = e.limit();
        emit(out, j);
        err << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const NotIrregularPoint& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace turnpike
