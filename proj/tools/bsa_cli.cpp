// Command-line front end. Exit codes: 0 ok, 1 usage or parse error, 2 known nonexistent,
// 3 inadmissible parameters, 4 ingredient unavailable, 5 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"

#include "bsa/catalog.hpp"
#include "bsa/construct.hpp"
#include "bsa/design_io.hpp"
#include "bsa/errors.hpp"
#include "bsa/ingredient_source.hpp"
#include "bsa/partitions.hpp"

using namespace bsa;

namespace {

enum Exit { Ok = 0, Usage = 1, Nonexistent = 2, Inadmissible = 3, Unavailable = 4, VerifyFail = 5 };

struct UsageError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::string point(int x, int c) { return "(" + std::to_string(x / c) + "," + std::to_string(x % c) + ")"; }

// prints the violations and returns the exit code for a report
int report(const VerifyReport& rep, int c) {
    if (rep.ok) {
        std::cout << "ok\n";
        return Ok;
    }
    std::cout << "FAILED: " << rep.total_violations << " violation(s)\n";
    for (const auto& v : rep.violations) {
        if (v.b >= 0) {
            const char* what = v.actual < v.expected ? "under-covered" : "over-covered";
            std::cout << what << " " << point(v.a, c) << " " << point(v.b, c) << " expected " << v.expected << " got "
                      << v.actual << "\n";
        } else {
            std::cout << v.note << " expected " << v.expected << " got " << v.actual << "\n";
        }
    }
    if (rep.total_violations > rep.violations.size())
        std::cout << "... " << rep.total_violations - rep.violations.size() << " more\n";
    return VerifyFail;
}

struct GridFlags {
    std::string scheme = "sb";
    int rows = 0, cols = 0, k = 3, lambda = 1;

    void add(CLI::App* app) {
        app->add_option("--scheme", scheme, "adjacency scheme: rc, sb, is, 1d, 1d:m")->capture_default_str();
        app->add_option("--rows", rows, "grid rows")->required()->check(CLI::PositiveNumber);
        app->add_option("--cols", cols, "grid columns")->required()->check(CLI::PositiveNumber);
        app->add_option("--k", k, "block size")->capture_default_str()->check(CLI::PositiveNumber);
        app->add_option("--lambda", lambda, "index")->capture_default_str()->check(CLI::PositiveNumber);
    }
    DesignParams params() const {
        AdjacencyScheme s;
        try {
            s = parse_scheme(scheme);
        } catch (const Error& e) {
            throw UsageError(std::string("--scheme: ") + e.what());
        }
        DesignParams p{s, rows, cols, k, lambda};
        try {
            p.validate();
        } catch (const DomainError& e) {
            throw UsageError(std::string("--rows/--cols/--k: ") + e.what());
        }
        return p;
    }
};

int cmd_check(const GridFlags& g) {
    const auto p = g.params();
    const auto rep = admissibility(p);
    std::cout << to_string(rep.status);
    if (!rep.failed.empty()) std::cout << " (" << rep.failed << ")";
    std::cout << "\n";
    if (!rep.note.empty()) std::cout << "note: " << rep.note << "\n";
    std::cout << "minimal lambda: " << (rep.minimal_lambda ? std::to_string(*rep.minimal_lambda) : "none") << "\n";
    std::cout << "expected blocks: " << expected_block_count(p) << "\n";
    return Ok;
}

Design build(const DesignParams& p, std::string& route) {
    if (p.scheme.kind == SchemeKind::SharingBorder && p.k == 3) {
        auto x = construct_2bsec_traced(p.r, p.c, p.lambda);
        route = x.route;
        return x.design;
    }
    if (auto m = lookup(p)) {
        route = "catalog:" + m->entry->id + (m->transposed ? " transposed" : "");
        return realize(*m);
    }
    if (p.scheme.kind == SchemeKind::Island && p.k == 3 && p.lambda == 1 && (p.r == 3 || p.c == 3)) {
        route = "island";
        auto d = construct_island_3row(p.r == 3 ? p.c : p.r);
        return p.r == 3 ? d : transpose(d);
    }
    throw IngredientUnavailable("no construction for " + scheme_name(p.scheme) + " " + std::to_string(p.r) + "x" +
                                std::to_string(p.c) + " k=" + std::to_string(p.k) + " lambda=" +
                                std::to_string(p.lambda));
}

int cmd_construct(const GridFlags& g, const std::string& out) {
    const auto p = g.params();
    const auto adm = admissibility(p);
    if (adm.status == Admissibility::KnownNonexistent) {
        std::cerr << "no such design exists: " << adm.note << "\n";
        return Nonexistent;
    }
    if (adm.status == Admissibility::DivisibilityFail) {
        std::cerr << "inadmissible parameters: " << adm.failed << "\n";
        return Inadmissible;
    }
    std::string route;
    Design d = build(p, route);
    const auto rep = verify_bsa(d);
    if (!rep.ok) {
        std::cerr << "construction failed verification via " << route << "\n";
        return report(rep, d.params.c);
    }
    canonicalize(d);
    write_out(out, format_design(d));
    std::cerr << d.blocks.size() << " blocks via " << route << "\n";
    return Ok;
}

int cmd_verify(const std::string& file) {
    Design d;
    try {
        d = parse_design(read_file(file));
    } catch (const ParseError& e) {
        throw UsageError(file + ": " + e.what());
    }
    return report(verify_bsa(d), d.params.c);
}

int cmd_catalog_list(const CatalogFilter& f) {
    for (const auto& id : list_entries(f)) std::cout << id << "\n";
    return Ok;
}

int cmd_catalog_realize(const std::string& id, const std::string& out) {
    const CatalogEntry* e = nullptr;
    for (const auto& x : catalog())
        if (x.id == id) e = &x;
    if (!e) throw UsageError("--id: unknown catalog entry '" + id + "'");
    Design d = realize(*e);
    const auto rep = verify_entry(*e, d);
    if (!rep.ok) return report(rep, d.params.c);
    write_out(out, format_design(d));
    std::cerr << d.blocks.size() << " blocks\n";
    return Ok;
}

int print_partition(const TriplePartition& p) {
    for (const auto& t : p.triples) std::cout << "{" << t[0] << "," << t[1] << "," << t[2] << "}\n";
    return verify_triples(p) ? Ok : VerifyFail;
}

int cmd_search(const std::string& spec_file, std::uint64_t seed, std::optional<std::uint64_t> budget,
               const std::string& out) {
    IngredientSpec s;
    try {
        std::string text = read_file(spec_file);
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
        s = parse_spec(text);
    } catch (const ParseError& e) {
        throw UsageError("--spec: " + std::string(e.what()));
    }
    try {
        auto g = search_ingredient(s, seed, budget.value_or(default_search_budget(s)));
        std::ostringstream os;
        os << "ingredient " << canonical_key(s) << "\n";
        for (const auto& b : g.blocks) {
            os << "{";
            for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
            os << "}\n";
        }
        write_out(out, os.str());
        std::cerr << g.blocks.size() << " blocks via " << g.provenance << "\n";
        return Ok;
    } catch (const InadmissibleSpec& e) {
        std::cerr << "inadmissible spec: " << e.what() << "\n";
        return Inadmissible;
    } catch (const BudgetExceeded& e) {
        std::cerr << "search budget exhausted: " << e.what() << "\n";
        return Unavailable;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Balanced sampling plans on grids: construct, verify and explore designs"};
    app.require_subcommand(1);
    int jobs = 0;
    app.add_option("--jobs", jobs, "threads for pair counting (0 = runtime default)")->check(CLI::NonNegativeNumber);

    GridFlags check_flags, construct_flags;
    std::string out;
    auto* check = app.add_subcommand("check", "admissibility and minimal index of a grid design");
    check_flags.add(check);
    auto* construct = app.add_subcommand("construct", "build and verify a design, write it in the design file format");
    construct_flags.add(construct);
    construct->add_option("--out", out, "output file (default stdout)");

    std::string verify_file;
    auto* verify = app.add_subcommand("verify", "re-check a design file");
    verify->add_option("file", verify_file, "design file")->required();

    auto* cat = app.add_subcommand("catalog", "catalog entries");
    cat->require_subcommand(1);
    CatalogFilter filter;
    auto* list = cat->add_subcommand("list", "list entry ids");
    list->add_option("--kind", filter.kind, "sb, rc, is or qmgdd");
    list->add_option("--rows", filter.r, "rows");
    list->add_option("--cols", filter.c, "columns");
    list->add_option("--k", filter.k, "block size");
    list->add_option("--lambda", filter.lambda, "index");
    std::string id;
    auto* real = cat->add_subcommand("realize", "expand an entry into a design file");
    real->add_option("--id", id, "entry id")->required();
    real->add_option("--out", out, "output file (default stdout)");

    auto* part = app.add_subcommand("partition", "print a triple partition, one triple per line");
    part->require_subcommand(1);
    int pc = 0, pv = 0, pd = 0, pm = 0, pk = 0;
    std::uint64_t pseed = 0;
    auto* island = part->add_subcommand("island", "island partition for 3-row designs");
    island->add_option("--c", pc, "columns (odd, >= 9)")->required();
    auto* bryant = part->add_subcommand("bryant", "partition of 1..(v-1)/2 into difference triples");
    bryant->add_option("--v", pv, "cyclic order")->required();
    auto* zcse = part->add_subcommand("zc-se", "Skolem-type triple partition");
    zcse->add_option("--d", pd, "first difference")->required();
    zcse->add_option("--m", pm, "number of triples")->required();
    zcse->add_option("--k", pk, "position of the hook")->required();
    auto* zcseq = part->add_subcommand("zc-seq", "Langford-type triple partition");
    zcseq->add_option("--d", pd, "first difference")->required();
    zcseq->add_option("--m", pm, "number of triples")->required();
    for (auto* s : {bryant, zcse, zcseq}) s->add_option("--seed", pseed, "search seed")->capture_default_str();

    std::string spec_file;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> budget;
    auto* search = app.add_subcommand("search", "seeded search for an ingredient spec");
    search->add_option("--spec", spec_file, "file holding a spec such as 'hgdd (5,2^5) k=3 lambda=3'")->required();
    search->add_option("--seed", seed, "search seed")->capture_default_str();
    search->add_option("--budget", budget, "step budget (default depends on the spec)");
    search->add_option("--out", out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }
    if (jobs > 0) omp_set_num_threads(jobs);

    try {
        if (*check) return cmd_check(check_flags);
        if (*construct) return cmd_construct(construct_flags, out);
        if (*verify) return cmd_verify(verify_file);
        if (*list) return cmd_catalog_list(filter);
        if (*real) return cmd_catalog_realize(id, out);
        if (*island) return print_partition(island_partition(pc));
        if (*bryant) return print_partition(bryant_partition(pv, pseed));
        if (*zcse) return print_partition(zc_se_partition(pd, pm, pk, pseed));
        if (*zcseq) return print_partition(zc_seq_partition(pd, pm, pseed));
        if (*search) return cmd_search(spec_file, seed, budget, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    } catch (const KnownNonexistent& e) {
        std::cerr << "no such design exists: " << e.what() << "\n";
        return Nonexistent;
    } catch (const InadmissibleParams& e) {
        std::cerr << "inadmissible parameters: " << e.what() << "\n";
        return Inadmissible;
    } catch (const IngredientUnavailable& e) {
        std::cerr << "ingredient unavailable: " << e.what() << "\n";
        return Unavailable;
    } catch (const PreconditionFail& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    } catch (const StructureError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return VerifyFail;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Unavailable;
    }
    return Usage;
}
