#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hompres/hompres.hpp"

namespace hompres::cli {

enum Status : int { kOk = 0, kDomainError = 1, kBudget = 2, kCertificateFailure = 3 };

/// Raised when a certificate fails re-verification just before printing.
struct CertificateFailure : Error {
    using Error::Error;
};

namespace detail {

/// A formula argument is a file path when such a file exists, else inline text.
inline std::string formula_text(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) {
        std::string text = read_text_file(arg), out;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line))
            if (line.rfind('#', 0) != 0)
                out += line + "\n";
        return out;
    }
    return arg;
}

inline Formula load_formula(const std::string& arg, const Vocabulary& vocab) {
    return parse_formula(formula_text(arg), vocab);
}

inline std::vector<ElementId> split_ids(const std::string& s) {
    std::vector<ElementId> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

inline std::string join(const std::vector<ElementId>& ids, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i)
        out += (i ? sep : "") + ids[i];
    return out;
}

inline void print_embedding(std::ostream& out, const MinorEmbedding& emb) {
    out << "MINOR K_" << emb.order;
    if (emb.depth)
        out << " depth " << *emb.depth;
    out << "\n";
    for (std::size_t i = 0; i < emb.branch_sets.size(); ++i) {
        out << "branch " << i + 1 << ":";
        for (const auto& v : emb.branch_sets[i])
            out << ' ' << v;
        if (i < emb.centers.size())
            out << "  (center " << emb.centers[i] << ")";
        out << "\n";
    }
}

inline void print_witness(std::ostream& out, const ScatteredWitness& w) {
    out << "SCATTERED r=" << w.radius << "\n";
    out << "deleted: " << join(w.deleted) << "\n";
    out << "scattered: " << join(w.scattered) << "\n";
}

inline void require(bool ok, const std::string& what) {
    if (!ok)
        throw CertificateFailure("certificate failed re-verification: " + what);
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f)
        throw DomainError("cannot write '" + path.string() + "'");
    f << text;
}

inline ClassSpec class_from_name(const std::string& name, std::size_t bound) {
    if (name == "S")
        return class_S(bound);
    if (name == "graphs")
        return graph_class(bound);
    if (name.rfind("corpus:", 0) == 0) {
        std::filesystem::path dir = name.substr(7);
        if (!std::filesystem::is_directory(dir))
            throw DomainError("corpus directory '" + dir.string() + "' not found");
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".struct")
                files.push_back(e.path());
        std::sort(files.begin(), files.end());
        std::vector<Structure> corpus;
        for (const auto& f : files)
            corpus.push_back(load_structure(f.string()));
        return corpus_class(std::move(corpus), name);
    }
    throw DomainError("unknown class '" + name + "' (expected S, graphs or corpus:<dir>)");
}

}  // namespace detail

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Homomorphism preservation workbench", "hompres"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads (output does not depend on it)")
        ->check(CLI::PositiveNumber);

    std::string file_a, file_b, formula, assign, cls = "S", profile_file, out_dir, delete_ids, scattered_ids;
    std::vector<std::string> files;
    std::size_t budget = 0, max_size = 4, copies = 0, samples = 500;
    int r = 1, k = 2, m = 2, kmax = 3, n = 3, components = 0, n_bound = 6;
    std::optional<int> depth;
    std::optional<std::uint64_t> seed;
    std::uint64_t check_seed = 1;
    std::string mode = "exact";

    auto* gaifman = app.add_subcommand("gaifman", "print the Gaifman graph of a structure");
    gaifman->add_option("structure", file_a)->required()->check(CLI::ExistingFile);

    auto* eval = app.add_subcommand("eval", "evaluate a formula (file or inline) on a structure");
    eval->add_option("structure", file_a)->required()->check(CLI::ExistingFile);
    eval->add_option("formula", formula)->required();
    eval->add_option("--assign", assign, "free-variable values: x=id,y=id");

    auto* hom = app.add_subcommand("hom", "search for a homomorphism A -> B");
    hom->add_option("A", file_a)->required()->check(CLI::ExistingFile);
    hom->add_option("B", file_b)->required()->check(CLI::ExistingFile);
    hom->add_option("--budget", budget, "search-node budget (0 = unlimited)");

    auto* scattered = app.add_subcommand("scattered", "largest r-scattered set of a graph");
    scattered->add_option("graph", file_a)->required()->check(CLI::ExistingFile);
    scattered->add_option("--r", r)->check(CLI::NonNegativeNumber);
    scattered->add_option("--mode", mode)->check(CLI::IsMember({"exact", "greedy"}));

    auto* quasiwide = app.add_subcommand("quasiwide", "K_k at depth r+1, or a deletion set and a scattered set");
    quasiwide->add_option("graph", file_a)->required()->check(CLI::ExistingFile);
    quasiwide->add_option("--k", k)->required();
    quasiwide->add_option("--r", r)->required();
    quasiwide->add_option("--m", m)->required();

    auto* minor = app.add_subcommand("minor", "is the first graph a (depth-r) minor of the second");
    minor->add_option("pattern", file_a)->required()->check(CLI::ExistingFile);
    minor->add_option("host", file_b)->required()->check(CLI::ExistingFile);
    minor->add_option("--depth", depth)->check(CLI::NonNegativeNumber);

    auto* grad_cmd = app.add_subcommand("grad", "greatest reduced average density at depth r");
    grad_cmd->add_option("graph", file_a)->required()->check(CLI::ExistingFile);
    grad_cmd->add_option("--r", r)->check(CLI::NonNegativeNumber);

    auto* classify = app.add_subcommand("classify", "least deletion size giving an r-scattered set of size m");
    classify->add_option("graphs", files)->required()->check(CLI::ExistingFile);
    classify->add_option("--r", r)->required();
    classify->add_option("--m", m)->required();
    classify->add_option("--kmax", kmax)->required();

    auto* plebeian = app.add_subcommand("plebeian", "companion structure after deleting elements");
    plebeian->add_option("structure", file_a)->required()->check(CLI::ExistingFile);
    plebeian->add_option("--delete", delete_ids, "comma-separated element ids")->required();
    plebeian->add_option("--formula", formula, "formula to translate (file or inline)");
    plebeian->add_option("--out", out_dir, "write companion.struct and translated.fo here");

    auto* minimal = app.add_subcommand("minimal", "minimal models of a formula in a class");
    minimal->add_option("--formula", formula)->required();
    minimal->add_option("--class", cls, "S, graphs or corpus:<dir>");
    minimal->add_option("--max-size", max_size);

    auto* agdemo = app.add_subcommand("agdemo", "non-minimality construction from a scattered set");
    agdemo->add_option("--structure", file_a)->required()->check(CLI::ExistingFile);
    agdemo->add_option("--formula", formula)->required();
    agdemo->add_option("--profile", profile_file)->required()->check(CLI::ExistingFile);
    agdemo->add_option("--scattered", scattered_ids, "comma-separated; default: a maximum one, truncated");
    agdemo->add_option("--copies", copies, "number of copies of B (default: largest width)");
    agdemo->add_option("--out", out_dir, "write A, B, A_n, B_n structure files here");

    auto* counter = app.add_subcommand("counterexample", "the linear-order class");
    counter->require_subcommand(1);
    auto* gen = counter->add_subcommand("gen", "print L_n, or a sampled member of S with --seed");
    gen->add_option("--n", n)->required();
    gen->add_option("--seed", seed);
    gen->add_option("--components", components, "component count bound for sampling (default 3)");
    auto* check = counter->add_subcommand("check", "run the order-class checks");
    check->add_option("--seed", check_seed);
    check->add_option("--samples", samples);
    check->add_option("--n-bound", n_bound);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }

    std::ostringstream buf;
    try {
        if (*gaifman) {
            buf << print_graph(gaifman_graph(load_structure(file_a)));
        } else if (*eval) {
            Structure a = load_structure(file_a);
            Formula phi = detail::load_formula(formula, a.vocabulary());
            Assignment env;
            for (const auto& kv : detail::split_ids(assign)) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw DomainError("--assign expects x=id pairs");
                env[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            buf << (evaluate(a, phi, env) ? "TRUE" : "FALSE") << "\n";
        } else if (*hom) {
            Structure a = load_structure(file_a), b = load_structure(file_b);
            HomSearchResult res = search_homomorphism(a, b, budget);
            if (res.status == SearchStatus::Unknown) {
                out << "UNKNOWN\n";
                return kBudget;
            }
            if (res.status == SearchStatus::None) {
                buf << "NONE\n";
            } else {
                detail::require(is_hom(a, b, *res.map), "homomorphism");
                for (const auto& e : a.universe())
                    buf << e << "→" << res.map->at(e) << "\n";
            }
        } else if (*scattered) {
            Graph g = load_graph(file_a);
            auto set = max_scattered_set_ids(g, r, mode == "exact" ? ScatterMode::Exact : ScatterMode::Greedy);
            detail::require(is_r_scattered(g, set, r), "scattered set");
            buf << "size " << set.size() << (mode == "exact" ? " (maximum)" : " (greedy)") << "\n";
            buf << "scattered: " << detail::join(set) << "\n";
        } else if (*quasiwide) {
            Graph g = load_graph(file_a);
            DichotomyResult res = scattered_or_shallow_clique(g, k, r, m);
            if (auto* emb = std::get_if<MinorEmbedding>(&res)) {
                detail::require(verify_minor(g, *emb) && emb->depth && *emb->depth <= r + 1, "clique minor");
                detail::print_embedding(buf, *emb);
            } else if (auto* w = std::get_if<ScatteredWitness>(&res)) {
                detail::require(verify_scattered_witness(g, *w, static_cast<std::size_t>(k - 2),
                                                         static_cast<std::size_t>(m)),
                                "scattered witness");
                detail::print_witness(buf, *w);
            } else {
                out << buf.str() << "EXHAUSTED: " << std::get<Exhausted>(res).reason << "\n";
                return kBudget;
            }
        } else if (*minor) {
            Graph pattern = load_graph(file_a), host = load_graph(file_b);
            auto emb = is_minor(pattern, host, depth);
            if (!emb) {
                buf << "NONE\n";
            } else {
                detail::require(verify_minor(pattern, host, *emb), "minor embedding");
                detail::print_embedding(buf, *emb);
            }
        } else if (*grad_cmd) {
            Graph g = load_graph(file_a);
            GradResult res = grad(g, r);
            buf << "grad_" << r << " = " << to_string(res.value) << (res.exact ? " (exact)" : " (lower bound)")
                << "\n";
            for (std::size_t i = 0; i < res.branch_sets.size(); ++i)
                buf << "branch " << i + 1 << ": " << detail::join(res.branch_sets[i]) << "\n";
        } else if (*classify) {
            std::vector<Graph> graphs;
            for (const auto& f : files)
                graphs.push_back(load_graph(f));
            CorpusReport rep = classify_corpus(graphs, r, m, kmax);
            for (std::size_t i = 0; i < graphs.size(); ++i) {
                const auto& e = rep.entries[i];
                buf << files[i] << ": ";
                if (e.least_k) {
                    detail::require(e.witness && verify_scattered_witness(graphs[i], *e.witness,
                                                                          static_cast<std::size_t>(*e.least_k),
                                                                          static_cast<std::size_t>(m)),
                                    "scattered witness for " + files[i]);
                    buf << "k=" << *e.least_k << "  deleted: " << detail::join(e.witness->deleted)
                        << "  scattered: " << detail::join(e.witness->scattered) << "\n";
                } else {
                    buf << "none <= " << kmax << "\n";
                }
            }
            buf << "corpus: " << (rep.corpus_k ? "k=" + std::to_string(*rep.corpus_k) : "none <= " + std::to_string(kmax))
                << "\n";
        } else if (*plebeian) {
            Structure a = load_structure(file_a);
            auto deleted = detail::split_ids(delete_ids);
            Structure p = companion_structure(a, deleted);
            std::string ptext = print_structure(p);
            std::string ftext;
            if (!formula.empty()) {
                Formula phi = detail::load_formula(formula, a.vocabulary());
                Formula hat = translate_formula(phi, static_cast<int>(deleted.size()), a.vocabulary());
                auto rep = verify_companion(a, deleted, phi);
                detail::require(rep.ok(), "companion translation");
                ftext = to_string(hat) + "\n";
            }
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                detail::write_file(std::filesystem::path(out_dir) / "companion.struct", ptext);
                if (!ftext.empty())
                    detail::write_file(std::filesystem::path(out_dir) / "translated.fo", ftext);
            }
            buf << ptext;
            if (!ftext.empty())
                buf << "# translated formula\n# " << ftext;
        } else if (*minimal) {
            ClassSpec c = detail::class_from_name(cls, max_size);
            Formula phi = detail::load_formula(formula, c.vocabulary);
            auto models = enumerate_minimal_models(phi, c, max_size);
            buf << "minimal models: " << models.size() << "\n";
            for (std::size_t i = 0; i < models.size(); ++i) {
                detail::require(is_minimal_model(models[i], phi, c), "minimal model " + std::to_string(i + 1));
                buf << "# model " << i + 1 << " (" << models[i].size() << " elements)\n" << print_structure(models[i]);
            }
            buf << "# existential positive sentence\n# " << to_string(ep_from_minimal_models(models)) << "\n";
        } else if (*agdemo) {
            Structure a = load_structure(file_a);
            Formula phi = detail::load_formula(formula, a.vocabulary());
            BasicLocalProfile prof = parse_profile(read_text_file(profile_file), a.vocabulary());
            std::vector<ElementId> set = detail::split_ids(scattered_ids);
            if (set.empty()) {
                set = max_scattered_set_ids(gaifman_graph(a), prof.r(), ScatterMode::Exact);
                if (set.size() < prof.m())
                    throw DomainError("largest " + std::to_string(prof.r()) + "-scattered set has " +
                                      std::to_string(set.size()) + " elements, need m = " + std::to_string(prof.m()));
                set.resize(prof.m());
            }
            ConstructionTrace tr = ag_construct(a, phi, prof, set, copies);
            buf << format_trace(tr);
            if (!out_dir.empty()) {
                std::filesystem::path d(out_dir);
                std::filesystem::create_directories(d);
                detail::write_file(d / "A.struct", print_structure(tr.a));
                detail::write_file(d / "B.struct", print_structure(tr.b));
                detail::write_file(d / "A_n.struct", print_structure(tr.a_n));
                detail::write_file(d / "B_n.struct", print_structure(tr.b_n));
            }
            detail::require(tr.certified(), "construction homomorphisms");
            if (!tr.agreement()) {
                out << buf.str();
                err << "A_n and B_n disagree on the formula\n";
                return kCertificateFailure;
            }
        } else if (*gen) {
            if (seed) {
                SClassMember mem = sample_S(*seed, n, components > 0 ? components : 3);
                buf << "# components:";
                for (const auto& c : mem.components)
                    buf << " L_" << c.m;
                buf << "\n" << print_structure(mem.structure());
            } else {
                buf << print_structure(make_Ln(n));
            }
        } else if (*check) {
            LemmaReport rep = check_lemmas(samples, check_seed, n_bound);
            for (const auto& c : rep.checks) {
                buf << c.name << ": " << (c.ok() ? "PASS" : "FAIL") << " (checked " << c.checked << ", violations "
                    << c.violations << ")\n";
                for (const auto& ex : c.examples)
                    buf << "  " << ex << "\n";
            }
            buf << "minimal models:";
            for (const auto& l : rep.minimal_models)
                buf << " L_" << l.size();
            buf << "\n";
            if (!rep.ok()) {
                out << buf.str();
                return kCertificateFailure;
            }
        }
    } catch (const CertificateFailure& e) {
        out << buf.str();
        err << "error: " << e.what() << "\n";
        return kCertificateFailure;
    } catch (const SearchLimitExceeded& e) {
        out << buf.str();
        err << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
    out << buf.str();
    return kOk;
}

}  // namespace hompres::cli
