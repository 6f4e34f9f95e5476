#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "report.hpp"

using namespace mkoszul;
using report::json;

namespace {

enum Exit { ok = 0, usage = 1, parse_error = 2, cap_exceeded = 3, internal = 4 };

struct Common {
    int n_max = 10;
    int i_max = 6;
    std::string field;
    std::string json_path;
    std::string checks = "all";
    std::uint64_t seed = 1;
    unsigned long long ambient_cap = Limits{}.max_ambient_dim;
};

std::optional<FieldSpec> parse_field_flag(const std::string& f) {
    if (f.empty()) return std::nullopt;
    if (f == "Q") return FieldSpec{FieldKind::rationals, 0};
    if (f.rfind("GF:", 0) == 0) {
        auto p = std::stoull(f.substr(3));
        if (!is_prime(p) || p >= (1ull << 31)) throw DomainError("--field GF:p needs a prime p < 2^31");
        return FieldSpec{FieldKind::prime_field, (std::uint32_t)p};
    }
    throw DomainError("--field must be Q or GF:p");
}

std::set<std::string> parse_checks(const std::string& list) {
    std::set<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "all") {
            out.insert(report::all_checks().begin(), report::all_checks().end());
            continue;
        }
        if (std::find(report::all_checks().begin(), report::all_checks().end(), item) == report::all_checks().end())
            throw DomainError("unknown check '" + item + "'");
        out.insert(item);
    }
    return out;
}

void emit_json(const json& j, const std::string& path) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::ios_base::failure("cannot write " + path);
    f << j.dump(2) << "\n";
}

template <Field F>
json analyze_with(const RawPresentation& raw, const F& f, const Common& c) {
    Limits lim;
    lim.max_ambient_dim = c.ambient_cap;
    auto p = build_presentation(raw, f, lim);
    report::Options o;
    o.bounds = {c.i_max, c.n_max};
    o.checks = parse_checks(c.checks);
    return report::analyze(p, o);
}

int cmd_analyze(const std::string& file, const Common& c) {
    std::ifstream in(file);
    if (!in) {
        std::cerr << "mkoszul: cannot read " << file << "\n";
        return usage;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto raw = parse_raw(buf.str());
    if (auto fs = parse_field_flag(c.field)) raw.field = *fs;
    json r = raw.field.kind == FieldKind::rationals ? analyze_with(raw, Rationals{}, c) : analyze_with(raw, PrimeField(raw.field.characteristic), c);
    r["input"] = file;
    std::cout << report::render(r);
    emit_json(r, c.json_path);
    return ok;
}

int cmd_corpus(const Common& c, int count, bool generic, int max_gens, std::optional<int> index, bool k2, bool bimodule) {
    CorpusOptions o;
    o.seed = c.seed;
    o.count = count;
    o.generic = generic;
    o.max_gens = max_gens;
    o.bounds = {c.i_max, c.n_max};
    o.k2 = k2;
    o.bimodule = bimodule;
    json records = json::array();
    auto summary = run_corpus(o, index, [&](const CorpusRecord& r) {
        records.push_back(report::record_json(r));
        if (r.disagreements.empty()) return;
        std::cout << "DISAGREEMENT at index " << r.index << ":";
        for (auto& d : r.disagreements) std::cout << " [" << d << "]";
        std::cout << "\n" << r.text << "reproduce: mkoszul corpus --seed " << c.seed << " --count " << count << " --index " << r.index
                  << " --nmax " << c.n_max << " --imax " << c.i_max << (generic ? " --generic" : "") << "\n";
    });
    std::size_t yes = 0;
    for (auto& r : summary.records) yes += r.tor.multi_koszul;
    std::cout << "corpus seed=" << c.seed << " presentations=" << summary.records.size() << " multi-Koszul=" << yes
              << " disagreements=" << summary.disagreements() << "\n";
    json j{{"tool", "mkoszul"}, {"schema_version", 1}, {"seed", c.seed}, {"count", count}, {"generic", generic},
           {"bounds", report::bounds_json(o.bounds)}, {"presentations", summary.records.size()}, {"multi_koszul", yes},
           {"disagreements", summary.disagreements()}, {"records", records}};
    emit_json(j, c.json_path);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mkoszul: multi-Koszul algebra engine"};
    app.require_subcommand(1);
    Common c;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--nmax", c.n_max, "internal degree bound")->check(CLI::Range(0, 64));
        sub->add_option("--imax", c.i_max, "homological degree bound")->check(CLI::Range(0, 64));
        sub->add_option("--field", c.field, "Q or GF:p (overrides the file header)");
        sub->add_option("--json", c.json_path, "write the machine-readable report here ('-' for stdout)");
        sub->add_option("--checks", c.checks, "comma list of: all, hilbert, betti, verdict, decomposition, lattice, monomial, bimodule, hochschild, k2, ext");
        sub->add_option("--seed", c.seed, "corpus seed");
        sub->add_option("--ambient-cap", c.ambient_cap, "largest materialized V^(n) dimension");
    };

    auto analyze = app.add_subcommand("analyze", "analyze a presentation file");
    std::string file;
    analyze->add_option("file", file, "presentation file")->required();
    add_common(analyze);

    auto corpus = app.add_subcommand("corpus", "compare all methods on random two-degree presentations");
    int count = 100, max_gens = 3;
    bool generic = false, k2 = false, no_bimodule = false;
    std::optional<int> index;
    corpus->add_option("--count", count, "number of presentations")->check(CLI::NonNegativeNumber);
    corpus->add_option("--max-gens", max_gens, "at most this many generators")->check(CLI::Range(1, 4));
    corpus->add_option("--index", index, "only run this index of the stream");
    corpus->add_flag("--generic", generic, "random coefficients instead of monomials");
    corpus->add_flag("--k2", k2, "also check K2 generation of multi-Koszul members");
    corpus->add_flag("--no-bimodule", no_bimodule, "skip the bimodule complex comparison");
    add_common(corpus);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }
    try {
        if (analyze->parsed()) return cmd_analyze(file, c);
        return cmd_corpus(c, count, generic, max_gens, index, k2, !no_bimodule);
    } catch (const ParseError& e) {
        std::cerr << "mkoszul: parse error: " << e.what() << "\n";
        return parse_error;
    } catch (const CapExceeded& e) {
        std::cerr << "mkoszul: " << e.what() << "\n";
        return cap_exceeded;
    } catch (const InvariantViolation& e) {
        std::cerr << "mkoszul: internal invariant violated (a bug): " << e.what() << "\n";
        return internal;
    } catch (const std::exception& e) {
        std::cerr << "mkoszul: " << e.what() << "\n";
        return usage;
    }
}
