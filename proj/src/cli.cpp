#include "qmspec/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmspec/counting.hpp"
#include "qmspec/diagrams.hpp"
#include "qmspec/qminors.hpp"
#include "qmspec/qtorus.hpp"
#include "qmspec/restoration.hpp"
#include "qmspec/verify.hpp"

namespace qmspec {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

json diagram_as_json(const Diagram& w) {
    json rows = json::array();
    for (int i = 1; i <= w.n(); ++i) {
        json row = json::array();
        for (int a = 1; a <= w.n(); ++a) row.push_back(w.contains(i, a) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    return rows;
}

json record_as_json(const ClassificationRecord& rec) {
    json j;
    j["diagram"] = rec.diagram.str();
    j["rank"] = rec.rank;
    if (rec.witness) {
        j["witness"] = json{{"rows", rec.witness->rows}, {"cols", rec.witness->cols}};
    } else {
        j["witness"] = nullptr;
    }
    j["gap_free"] = rec.gap_free;
    return j;
}

// ---- count -----------------------------------------------------------------

int cmd_count(int n, const std::string& format, bool allow_large, std::ostream& out) {
    const int cap = allow_large ? 10 : 6;
    if (n < 1 || n > cap)
        throw ParseError("count supports n in [1," + std::to_string(cap) +
                         "]" + (allow_large ? "" : " (use --allow-large up to 10)"));

    std::vector<CountValue> per_rank;
    CountValue total = 0;
    for (int t = 0; t <= n; ++t) {
        per_rank.push_back(rank_count(n, t));
        total += per_rank.back();
    }
    CountValue dsum = total_count_double_sum(n);
    CountValue wsum = poly_bernoulli_nn(n);
    CountValue ssum = total_count_sum_of_squares(n);
    bool agree = (dsum == wsum) && (wsum == ssum) && (ssum == total);

    if (format == "json") {
        json j;
        j["n"] = n;
        json ranks = json::array();
        for (int t = 0; t <= n; ++t)
            ranks.push_back(json{{"t", t}, {"count", per_rank[t].get_str()}});
        j["ranks"] = std::move(ranks);
        j["total"] = total.get_str();
        j["totals"] = json{{"double_sum", dsum.get_str()},
                           {"weighted_sum", wsum.get_str()},
                           {"sum_of_squares", ssum.get_str()},
                           {"agree", agree}};
        out << j.dump() << '\n';
    } else if (format == "csv") {
        out << "rank,count\n";
        for (int t = 0; t <= n; ++t) out << t << ',' << per_rank[t].get_str() << '\n';
        out << "total," << total.get_str() << '\n';
        out << "total_double_sum," << dsum.get_str() << '\n';
        out << "total_weighted_sum," << wsum.get_str() << '\n';
        out << "total_sum_of_squares," << ssum.get_str() << '\n';
        out << "totals_agree," << (agree ? "true" : "false") << '\n';
    } else {
        out << "rank counts for n=" << n << '\n';
        for (int t = 0; t <= n; ++t)
            out << "  t=" << t << ": " << per_rank[t].get_str() << '\n';
        out << "total: " << total.get_str() << '\n';
        out << "totals by formula: double-sum " << dsum.get_str() << ", weighted-sum "
            << wsum.get_str() << ", sum-of-squares " << ssum.get_str() << " -> "
            << (agree ? "agree" : "DISAGREE") << '\n';
    }
    return agree ? kExitOk : kExitInvariant;
}

// ---- enumerate --------------------------------------------------------------

// JSON-lines cache of classification records keyed by diagram string;
// lets the n=4 run resume after interruption.
std::map<std::string, ClassificationRecord> load_cache(const std::string& path) {
    std::map<std::string, ClassificationRecord> cache;
    std::ifstream in(path);
    if (!in) return cache;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) continue; // ignore torn lines from an aborted run
        if (!j.contains("diagram") || !j.contains("rank")) continue;
        ClassificationRecord rec{Diagram::parse(j["diagram"].get<std::string>()),
                                 j["rank"].get<int>(), std::nullopt,
                                 j.value("gap_free", false)};
        if (j.contains("witness") && !j["witness"].is_null())
            rec.witness = MinorIndex{j["witness"]["rows"].get<std::vector<int>>(),
                                     j["witness"]["cols"].get<std::vector<int>>()};
        cache.emplace(rec.diagram.str(), std::move(rec));
    }
    return cache;
}

int cmd_enumerate(int n, std::optional<int> rank, const std::string& format, int jobs,
                  bool allow_large, const std::string& cache_path, std::ostream& out,
                  std::ostream& err) {
    if (!rank) {
        if (n < 1 || n > 6) throw ParseError("enumerate supports n in [1,6]");
        if (format == "json") {
            out << "[";
            bool first = true;
            enumerate_W(n, [&](const Diagram& w) {
                out << (first ? "" : ",") << diagram_as_json(w).dump();
                first = false;
            });
            out << "]\n";
        } else if (format == "csv") {
            out << "diagram\n";
            enumerate_W(n, [&](const Diagram& w) { out << w.str() << '\n'; });
        } else {
            enumerate_W(n, [&](const Diagram& w) { out << w.str() << '\n'; });
        }
        return kExitOk;
    }

    if (n < 1 || n > 4)
        throw ParseError("enumerate with a rank filter supports n in [1,4]");
    if (n == 4 && !allow_large)
        throw ParseError("classifying all of n=4 is a long run; pass --allow-large");
    if (*rank < 0 || *rank > n)
        throw ParseError("rank filter must lie in [0," + std::to_string(n) + "]");

    // Classify, then emit in canonical order. Without a cache file the
    // work fans out over --jobs workers; with one, diagrams are handled
    // sequentially so each fresh record can be appended (and the run
    // resumed) as soon as it is computed. Progress goes to stderr only.
    std::vector<ClassificationRecord> records;
    const auto diagrams = all_diagrams(n);
    if (cache_path.empty()) {
        classify_all(n, jobs,
                     [&](const ClassificationRecord& rec) { records.push_back(rec); });
    } else {
        std::map<std::string, ClassificationRecord> cache = load_cache(cache_path);
        std::ofstream cache_out(cache_path, std::ios::app);
        if (!cache_out) throw ParseError("cannot open cache file " + cache_path);
        const TorusPresentation p{n};
        std::size_t done = 0;
        for (const Diagram& w : diagrams) {
            auto it = cache.find(w.str());
            if (it == cache.end()) {
                it = cache.emplace(w.str(), classify_rank(p, w)).first;
                cache_out << it->second.to_json() << '\n' << std::flush;
            }
            records.push_back(it->second);
            ++done;
            if (allow_large && done % 500 == 0)
                err << "progress: " << done << "/" << diagrams.size() << " classified\n";
        }
    }
    std::vector<const ClassificationRecord*> ordered;
    for (const ClassificationRecord& rec : records)
        if (rec.rank == *rank) ordered.push_back(&rec);

    if (format == "json") {
        out << "[";
        for (std::size_t i = 0; i < ordered.size(); ++i)
            out << (i ? "," : "") << record_as_json(*ordered[i]).dump();
        out << "]\n";
    } else if (format == "csv") {
        out << "diagram,rank,witness_rows,witness_cols,gap_free\n";
        for (const auto* rec : ordered) {
            auto join = [](const std::vector<int>& v) {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i)
                    s += (i ? " " : "") + std::to_string(v[i]);
                return s;
            };
            out << rec->diagram.str() << ',' << rec->rank << ','
                << (rec->witness ? join(rec->witness->rows) : "") << ','
                << (rec->witness ? join(rec->witness->cols) : "") << ','
                << (rec->gap_free ? "true" : "false") << '\n';
        }
    } else {
        for (const auto* rec : ordered) out << rec->diagram.str() << '\n';
    }
    return kExitOk;
}

// ---- restore ----------------------------------------------------------------

int cmd_restore(int n, const std::string& diagram, const std::string& format,
                std::ostream& out) {
    if (n < 1 || n > 6) throw ParseError("restore supports n in [1,6]");
    Diagram w = Diagram::parse(diagram); // throws with the failing cell
    if (w.n() != n)
        throw ParseError("diagram is " + std::to_string(w.n()) + "x" +
                         std::to_string(w.n()) + " but --n is " + std::to_string(n));
    const TorusPresentation p{n};
    QuantumMatrix M = restore(n, w);

    if (format == "json") {
        json j;
        j["n"] = n;
        j["diagram"] = w.str();
        json rows = json::array();
        for (int i = 1; i <= n; ++i) {
            json row = json::array();
            for (int a = 1; a <= n; ++a) row.push_back(to_string(p, M.at(i, a)));
            rows.push_back(std::move(row));
        }
        j["entries"] = std::move(rows);
        out << j.dump() << '\n';
    } else if (format == "csv") {
        out << "row,col,value\n";
        for (int i = 1; i <= n; ++i)
            for (int a = 1; a <= n; ++a)
                out << i << ',' << a << ',' << csv_quote(to_string(p, M.at(i, a))) << '\n';
    } else {
        for (int i = 1; i <= n; ++i)
            for (int a = 1; a <= n; ++a)
                out << "y[" << i << ',' << a << "] = " << to_string(p, M.at(i, a)) << '\n';
    }
    return kExitOk;
}

// ---- localized --------------------------------------------------------------

int cmd_localized(int n, const std::string& r_text, const std::string& format,
                  std::ostream& out) {
    if (n < 1 || n > 3) throw ParseError("localized supports n in [1,3]");
    RVector r = RVector::parse(r_text);
    r.require_valid(n);

    std::vector<GammaVector> gammas = enumerate_Gamma(n, r);
    std::vector<Diagram> family;
    for (const GammaVector& g : gammas) family.push_back(build_w_r_gamma(n, r, g));
    std::vector<Diagram> sorted_family = family;
    std::sort(sorted_family.begin(), sorted_family.end());
    std::vector<Diagram> survivors = surviving_diagrams(n, r);
    bool match = survivors == sorted_family;
    CountValue expected = gamma_size(n, r);

    if (format == "json") {
        json j;
        j["n"] = n;
        j["r"] = r.r;
        j["w_r"] = build_w_r(n, r).str();
        j["gamma_size"] = expected.get_str();
        json fam = json::array();
        for (std::size_t i = 0; i < gammas.size(); ++i)
            fam.push_back(json{{"gamma", gammas[i].g}, {"diagram", family[i].str()}});
        j["family"] = std::move(fam);
        json surv = json::array();
        for (const Diagram& w : survivors) surv.push_back(w.str());
        j["survivors"] = std::move(surv);
        j["match"] = match;
        out << j.dump() << '\n';
    } else if (format == "csv") {
        out << "gamma,diagram\n";
        for (std::size_t i = 0; i < gammas.size(); ++i)
            out << csv_quote(gammas[i].str()) << ',' << family[i].str() << '\n';
        out << "survivors," << survivors.size() << '\n';
        out << "match," << (match ? "true" : "false") << '\n';
    } else {
        out << "r = (" << r.str() << "), t = " << r.t() << ", w_r = "
            << build_w_r(n, r).str() << '\n';
        out << "|Gamma_r| = " << expected.get_str() << '\n';
        for (std::size_t i = 0; i < gammas.size(); ++i)
            out << "  gamma (" << gammas[i].str() << ") -> " << family[i].str() << '\n';
        out << "survival scan found " << survivors.size() << " diagrams\n";
        out << "family matches survival scan: " << (match ? "yes" : "NO") << '\n';
    }
    return match ? kExitOk : kExitInvariant;
}

// ---- verify -----------------------------------------------------------------

int cmd_verify(int n, const std::string& suite, int jobs, const std::string& format,
               std::ostream& out) {
    std::vector<CheckResult> results = run_suite(suite, n, jobs);
    int failed = 0;
    for (const auto& r : results)
        if (!r.pass) ++failed;

    if (format == "json") {
        json j;
        j["n"] = n;
        j["suite"] = suite;
        json checks = json::array();
        for (const auto& r : results)
            checks.push_back(json{{"name", r.name},
                                  {"pass", r.pass},
                                  {"millis", r.millis},
                                  {"detail", r.detail}});
        j["checks"] = std::move(checks);
        j["passed"] = static_cast<int>(results.size()) - failed;
        j["failed"] = failed;
        out << j.dump() << '\n';
    } else if (format == "csv") {
        out << "check,pass,millis,detail\n";
        for (const auto& r : results)
            out << csv_quote(r.name) << ',' << (r.pass ? "true" : "false") << ','
                << std::fixed << std::setprecision(1) << r.millis << ','
                << csv_quote(r.detail) << '\n';
    } else {
        for (const auto& r : results)
            out << (r.pass ? "PASS" : "FAIL") << ' ' << r.name << " (" << std::fixed
                << std::setprecision(1) << r.millis << " ms): " << r.detail << '\n';
        out << results.size() - failed << '/' << results.size() << " checks passed\n";
    }
    return failed == 0 ? kExitOk : kExitInvariant;
}

} // namespace

int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact toolkit for grid-diagram classes of quantum matrices"};
    app.require_subcommand(1);

    int n = 2;
    int jobs = 1;
    std::string format = "ascii";
    bool allow_large = false;

    auto add_common = [&](CLI::App* sub, bool with_jobs) {
        sub->add_option("--n", n, "grid size")->required();
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"ascii", "json", "csv"}));
        if (with_jobs) sub->add_option("--jobs", jobs, "worker threads");
    };

    CLI::App* count = app.add_subcommand("count", "closed-form class counts per rank");
    add_common(count, false);
    count->add_flag("--allow-large", allow_large, "permit n up to 10");

    std::optional<int> rank_filter;
    std::string cache_path;
    CLI::App* enumerate =
        app.add_subcommand("enumerate", "list the diagrams in canonical order");
    add_common(enumerate, true);
    enumerate->add_option("--rank", rank_filter, "only diagrams of this rank");
    enumerate->add_flag("--allow-large", allow_large,
                        "permit the long n=4 classification run");
    enumerate->add_option("--cache", cache_path,
                          "JSON-lines cache of classification records");

    std::string diagram_text;
    CLI::App* restore_cmd =
        app.add_subcommand("restore", "print the restored matrix of a diagram");
    add_common(restore_cmd, false);
    restore_cmd->add_option("--diagram", diagram_text, "rows/slash bit string")
        ->required();

    std::string r_text;
    CLI::App* localized = app.add_subcommand(
        "localized", "gamma family of an r-vector vs the survival scan");
    add_common(localized, false);
    localized->add_option("--r", r_text, "comma-separated r-vector; empty for t=0");

    std::string suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
    add_common(verify, true);
    verify->add_option("--suite", suite, "suite name or \"all\"");

    std::reverse(args.begin(), args.end()); // CLI11 consumes back-to-front
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (count->parsed()) return cmd_count(n, format, allow_large, out);
        if (enumerate->parsed())
            return cmd_enumerate(n, rank_filter, format, jobs, allow_large, cache_path,
                                 out, err);
        if (restore_cmd->parsed()) return cmd_restore(n, diagram_text, format, out);
        if (localized->parsed()) return cmd_localized(n, r_text, format, out);
        if (verify->parsed()) return cmd_verify(n, suite, jobs, format, out);
    } catch (const GapViolationError& e) {
        err << "invariant failure: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const PivotNotMonomialError& e) {
        err << "invariant failure: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const Error& e) {
        // remaining domain errors are bad inputs: unparsable or out-of-range
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    err << "error: no subcommand given\n";
    return kExitUsage;
}

} // namespace qmspec
