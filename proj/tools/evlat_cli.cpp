// Command line for structure files: validation, event listings, reduction,
// property checks, structure recovery, instance generation, and DOT export.
// Exit codes: 0 ok, 2 syntax or validation failure, 3 property violation,
// 64 usage, 74 I/O failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evlat/event.hpp"
#include "evlat/generator.hpp"
#include "evlat/io.hpp"
#include "evlat/morphisms.hpp"
#include "evlat/reconstruct.hpp"
#include "evlat/reduction.hpp"
#include "evlat/structure.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kViolation = 3;
constexpr int kUsage = 64;
constexpr int kIo = 74;

std::optional<std::string> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return ss.str();
}

// Empty path means stdout.
int emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return kOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return kIo;
    }
    out << text;
    out.flush();
    if (!out.good()) {
        std::cerr << "error: cannot write " << path << "\n";
        return kIo;
    }
    return kOk;
}

// Parse and validate a structure file, reporting problems on stderr.
std::optional<evlat::Structure> load(const std::string& path, int& rc) {
    auto text = slurp(path);
    if (!text) {
        std::cerr << "error: cannot read " << path << "\n";
        rc = kIo;
        return std::nullopt;
    }
    try {
        evlat::ValidationReport rep = evlat::parse_structure(*text);
        if (!rep.ok) {
            for (const auto& v : rep.violations) std::cerr << v.axiom << ": " << v.detail << "\n";
            rc = kInvalid;
            return std::nullopt;
        }
        return *rep.structure;
    } catch (const evlat::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = kInvalid;
        return std::nullopt;
    }
}

int cmd_validate(const std::string& path) {
    int rc = kOk;
    auto st = load(path, rc);
    if (!st) return rc;
    std::size_t states = 0;
    for (const auto& [id, sp] : st->spaces) states += sp.states.size();
    std::cout << "valid: yes\n"
              << "spaces: " << st->spaces.size() << "\n"
              << "states: " << states << "\n"
              << "top: " << st->top << "\n"
              << "bottom: " << st->bottom << "\n";
    return kOk;
}

int cmd_events(const std::string& path) {
    int rc = kOk;
    auto st = load(path, rc);
    if (!st) return rc;
    evlat::EventLattice el = evlat::build_event_lattice(*st);
    std::map<evlat::Id, std::size_t> per_base;
    for (const auto& e : el.events) ++per_base[e.base];
    for (const auto& label : el.labels) std::cout << label << "\n";
    for (const auto& [base, n] : per_base) std::cout << "based at " << base << ": " << n << "\n";
    std::cout << "total: " << el.events.size() << "\n";
    return kOk;
}

int cmd_reduce(const std::string& path) {
    int rc = kOk;
    auto st = load(path, rc);
    if (!st) return rc;
    evlat::EventLattice el = evlat::build_event_lattice(*st);
    evlat::ReducedPoset rp = evlat::build_reduced_poset(*st, el);
    for (std::size_t i = 0; i < rp.events.size(); ++i)
        std::cout << rp.labels[i] << " -> " << evlat::subset_label(rp.traces[i]) << "\n";
    std::cout << "total: " << rp.events.size() << "\n";
    if (rp.relation.antisymmetry_violation()) {
        std::cout << "lattice: no (duplicate traces)\n";
    } else {
        evlat::FinitePoset p(rp.relation.elements(), rp.relation.relation());
        std::cout << "lattice: " << (evlat::is_lattice(p).ok ? "yes" : "no") << "\n";
    }
    return kOk;
}

int cmd_check(const std::string& path) {
    int rc = kOk;
    auto st = load(path, rc);
    if (!st) return rc;
    evlat::EventLattice el = evlat::build_event_lattice(*st);
    evlat::ReducedPoset rp = evlat::build_reduced_poset(*st, el);
    evlat::EquivalenceReport eq = evlat::check_equivalences(*st, rp);

    struct Line {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Line> lines;

    evlat::MorphismReport space_map = evlat::check_space_embedding(*st, el);
    lines.push_back({"space map reverses the order", space_map.holds,
                     space_map.counterexample.value_or("")});

    {
        bool all = true;
        std::string detail;
        for (const evlat::Id& S : st->order.elements()) {
            evlat::MorphismReport r = evlat::check_powerset_embedding(*st, el, S);
            if (!r.holds && all) {
                all = false;
                detail = r.counterexample.value_or("at " + S);
            }
        }
        lines.push_back({"powerset embeddings hold at every space", all, detail});
    }

    {
        evlat::MorphismReport iso = evlat::check_trace_iso(*st, rp);
        bool pass = iso.holds == eq.distinct_traces;
        std::string detail;
        if (!pass)
            detail = iso.holds ? "isomorphism holds despite duplicate traces"
                               : iso.counterexample.value_or("isomorphism fails");
        lines.push_back({"trace map is an isomorphism exactly when traces are distinct", pass,
                         detail});
    }

    {
        evlat::MorphismReport mono = evlat::check_reduction_monotone(*st, el, rp);
        lines.push_back(
            {"reduction is monotone", mono.holds, mono.counterexample.value_or("")});
    }

    {
        std::string detail;
        if (!eq.agree)
            detail = std::string("distinct traces ") + (eq.distinct_traces ? "yes" : "no") +
                     ", antisymmetric " + (eq.antisymmetric ? "yes" : "no") +
                     ", powerset count " + (eq.powerset_count ? "yes" : "no");
        lines.push_back({"the three reduced-order readings agree", eq.agree, detail});
    }

    {
        bool pass = el.lattice_ok && el.meet_mismatches.empty();
        std::string detail;
        if (!el.lattice_ok && el.lattice_failing)
            detail = "no meet or join for " + el.lattice_failing->first + " and " +
                     el.lattice_failing->second;
        else if (!el.meet_mismatches.empty())
            detail = "meet of " + el.meet_mismatches.front().a + " and " +
                     el.meet_mismatches.front().b + " is not their conjunction";
        lines.push_back({"events form a lattice with conjunction as meet", pass, detail});
    }

    {
        bool pass = true;
        std::string detail;
        const std::size_t n = el.events.size();
        const std::size_t step = n * n > 20000 ? n * n / 20000 + 1 : 1;
        for (std::size_t k = 0; k < n * n && pass; k += step) {
            const evlat::Event& a = el.events[k / n];
            const evlat::Event& b = el.events[k % n];
            if (evlat::disjunction(*st, {a, b}) !=
                evlat::disjunction_by_complements(*st, {a, b})) {
                pass = false;
                detail = "operands " + el.labels[k / n] + ", " + el.labels[k % n];
            }
        }
        lines.push_back({"disjunction equals the complement composite", pass, detail});
    }

    {
        evlat::CardinalityCheck card = evlat::check_strict_cardinality(*st);
        if (!card.ok) {
            lines.push_back({"recovery round trip",
                             true,
                             "skipped: comparable spaces " + card.failing->first + " and " +
                                 card.failing->second + " have equal sizes"});
        } else {
            evlat::RecoveryResult r = evlat::reconstruct_full(el, rp);
            bool any_iso = false;
            for (bool ok : r.event_lattice_iso) any_iso = any_iso || ok;
            lines.push_back({"recovery round trip", any_iso,
                             any_iso ? "" : (r.failure.empty() ? "no isomorphic candidate"
                                                               : r.failure)});
        }
    }

    bool all = true;
    for (const Line& l : lines) {
        all = all && l.pass;
        std::cout << l.name << ": " << (l.pass ? "pass" : "FAIL");
        if (!l.detail.empty()) std::cout << " (" << l.detail << ")";
        std::cout << "\n";
    }
    return all ? kOk : kViolation;
}

int cmd_reconstruct(const std::string& path) {
    int rc = kOk;
    auto st = load(path, rc);
    if (!st) return rc;
    evlat::EventLattice el = evlat::build_event_lattice(*st);
    evlat::ReducedPoset rp = evlat::build_reduced_poset(*st, el);
    evlat::RecoveryResult r = evlat::reconstruct_full(el, rp);
    std::cout << "candidates: " << r.candidates.size() << "\n";
    if (r.candidates.empty()) {
        std::cout << "failure: " << r.failure << "\n";
        return kViolation;
    }
    std::cout << "unique: " << (r.unique ? "yes" : "no") << "\n";
    bool any_iso = false;
    for (std::size_t i = 0; i < r.candidates.size(); ++i) {
        any_iso = any_iso || r.event_lattice_iso[i];
        std::cout << "candidate " << i + 1
                  << ": event lattice isomorphic: " << (r.event_lattice_iso[i] ? "yes" : "no")
                  << "\n"
                  << evlat::serialize_structure(r.candidates[i]);
    }
    return any_iso ? kOk : kViolation;
}

int cmd_generate(const evlat::GenParams& params, const std::string& out) {
    evlat::Generated g;
    try {
        g = evlat::generate(params);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return emit(out, evlat::serialize_structure(g.structure));
}

int cmd_export_dot(const std::string& path, const std::string& object, const std::string& out) {
    int rc = kOk;
    auto st = load(path, rc);
    if (!st) return rc;
    std::string text;
    if (object == "spaces") {
        text = evlat::export_dot_spaces(*st);
    } else {
        evlat::EventLattice el = evlat::build_event_lattice(*st);
        if (object == "events") {
            text = evlat::export_dot_events(el);
        } else {
            text = evlat::export_dot_reduced(evlat::build_reduced_poset(*st, el));
        }
    }
    return emit(out, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattices of state spaces: events, reduction, recovery"};
    app.require_subcommand(1);

    std::string file, output, object;

    CLI::App* validate = app.add_subcommand("validate", "check a structure file against the axioms");
    validate->add_option("file", file, "structure file")->required();

    CLI::App* events = app.add_subcommand("events", "list the event family");
    events->add_option("file", file, "structure file")->required();

    CLI::App* reduce = app.add_subcommand("reduce", "list the reduced family and its traces");
    reduce->add_option("file", file, "structure file")->required();

    CLI::App* check = app.add_subcommand("check", "run the property suites");
    check->add_option("file", file, "structure file")->required();

    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "recover structures from the reduced family");
    reconstruct->add_option("file", file, "structure file")->required();

    evlat::GenParams params;
    CLI::App* generate = app.add_subcommand("generate", "emit a random structure file");
    generate->add_option("--seed", params.seed, "random seed")->capture_default_str();
    generate->add_option("--top-states", params.top_states, "states in the top space, 1 to 8")
        ->capture_default_str();
    generate->add_option("--spaces", params.n_spaces, "intermediate spaces, 0 to 6")
        ->capture_default_str();
    generate
        ->add_option("--strict-cardinality", params.strict_cardinality,
                     "comparable spaces get strictly different sizes")
        ->capture_default_str();
    generate
        ->add_option("--allow-duplicates", params.allow_duplicate_partitions,
                     "plant an incomparable duplicate partition")
        ->capture_default_str();
    generate->add_option("--output", output, "write to a file instead of stdout");

    CLI::App* dot = app.add_subcommand("export-dot", "emit a Hasse diagram in DOT form");
    dot->add_option("file", file, "structure file")->required();
    dot->add_option("--object", object, "spaces, events, or reduced")
        ->required()
        ->check(CLI::IsMember({"spaces", "events", "reduced"}));
    dot->add_option("--output", output, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (validate->parsed()) return cmd_validate(file);
    if (events->parsed()) return cmd_events(file);
    if (reduce->parsed()) return cmd_reduce(file);
    if (check->parsed()) return cmd_check(file);
    if (reconstruct->parsed()) return cmd_reconstruct(file);
    if (generate->parsed()) return cmd_generate(params, output);
    if (dot->parsed()) return cmd_export_dot(file, object, output);
    return kUsage;
}
