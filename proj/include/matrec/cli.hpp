#pragma once

// Command-line front end.  Exit codes: 0 success / YES, 1 NO, 2 usage or
// parse error, 3 capacity exceeded.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "matrec/caps.hpp"
#include "matrec/decision.hpp"
#include "matrec/graphs.hpp"
#include "matrec/hom.hpp"
#include "matrec/io.hpp"
#include "matrec/matroid.hpp"
#include "matrec/recolor.hpp"
#include "matrec/reduction.hpp"
#include "matrec/selfcheck.hpp"

namespace matrec {

namespace cli_detail {

struct Options {
    Caps caps;
    bool allow_loops = false;
    std::string matroid_path, codomain_path, graph_path, hom_path;
    std::string from_path, to_path, colouring_path, out_path, dot_path, report_path;
    std::string base_bits;
    std::uint32_t root = 0;
    std::size_t clique_n = 0;
    bool slow = false, count_only = false, want_path = false, full_rep = false;
    bool trivial = false;
    std::string target_path;
    bool target_loops = false;
};

inline MatroidPtr load(const std::string& path, bool allow_loops) {
    return share(io::load_matroid(path, allow_loops));
}

inline MatroidHom load_hom(const std::string& path, const MatroidPtr& dom,
                           const MatroidPtr& cod) {
    auto image = io::load_hom_image(path);
    if (image.size() != dom->size())
        throw std::invalid_argument(path + ": expected " + std::to_string(dom->size()) +
                                    " entries");
    if (!is_homomorphism(dom, cod, image))
        throw std::invalid_argument(path + ": not a homomorphism");
    return MatroidHom{dom, cod, std::move(image)};
}

inline void print_hom_line(std::ostream& out, const MatroidHom& h) {
    for (std::size_t e = 0; e < h.image.size(); ++e) out << (e ? " " : "") << h.image[e];
    out << "\n";
}

inline void maybe_write(const std::string& path, const std::string& content) {
    if (!path.empty()) io::write_file(path, content);
}

inline int cmd_check_hom(const Options& o, std::ostream& out) {
    auto m = load(o.matroid_path, o.allow_loops);
    auto n = load(o.codomain_path, o.allow_loops);
    auto image = io::load_hom_image(o.hom_path);
    if (image.size() != m->size())
        throw std::invalid_argument("hom file: wrong number of entries");
    bool ok = is_homomorphism(m, n, image, o.slow, o.caps);
    out << (ok ? "YES" : "NO") << "\n";
    return ok ? 0 : 1;
}

inline int cmd_enum_homs(const Options& o, std::ostream& out) {
    auto m = load(o.matroid_path, o.allow_loops);
    auto n = load(o.codomain_path, o.allow_loops);
    auto homs = enumerate_homs(m, n, o.caps);
    if (o.count_only) {
        out << homs.size() << "\n";
    } else {
        std::ostringstream os;
        os << "# matrec hom-list v1\n";
        for (const auto& h : homs) {
            for (std::size_t e = 0; e < h.image.size(); ++e) os << (e ? " " : "") << h.image[e];
            os << "\n";
        }
        if (o.out_path.empty())
            out << os.str();
        else
            io::write_file(o.out_path, os.str());
    }
    return 0;
}

inline int cmd_recol(const Options& o, std::ostream& out) {
    auto m = load(o.matroid_path, o.allow_loops);
    auto n = load(o.codomain_path, o.allow_loops);
    auto tau = load_hom(o.from_path, m, n);
    auto sigma = load_hom(o.to_path, m, n);
    auto path = recol_decide(tau, sigma, o.caps);
    if (!path) {
        out << "NO\n";
        return 1;
    }
    out << "YES length=" << path->length() << "\n";
    if (o.want_path) {
        std::ostringstream os;
        io::write_path(os, *path);
        if (o.out_path.empty())
            out << os.str();
        else
            io::write_file(o.out_path, os.str());
    }
    return 0;
}

inline int cmd_components(const Options& o, std::ostream& out) {
    auto m = load(o.matroid_path, o.allow_loops);
    auto n = load(o.codomain_path, o.allow_loops);
    auto g = build_col_graph(m, n, o.caps);
    auto comps = g.components();
    out << "homs=" << g.homs.size() << " edges=" << g.edges.size()
        << " components=" << comps.size() << "\n";
    for (const auto& comp : comps) {
        out << "size=" << comp.size() << " representative=";
        print_hom_line(out, g.homs[comp.front()]);
    }
    maybe_write(o.dot_path, io::dot_col_graph(g));
    return 0;
}

inline int cmd_decision_graph(const Options& o, std::ostream& out) {
    auto n = load(o.codomain_path, o.allow_loops);
    auto d = decision_graph(n, /*universal=*/!o.full_rep, o.caps);
    std::vector<std::size_t> degrees;
    for (std::uint32_t v = 0; v < d.graph->n; ++v) degrees.push_back(d.graph->degree(v));
    std::sort(degrees.begin(), degrees.end());
    out << "vertices=" << d.graph->n << " edges=" << d.graph->edges.size()
        << (d.graph->reflexive ? " reflexive" : "") << " degrees=";
    for (std::size_t i = 0; i < degrees.size(); ++i) out << (i ? "," : "") << degrees[i];
    out << "\n";
    maybe_write(o.dot_path, io::dot_decision_graph(d));
    return 0;
}

inline int cmd_tutte_phi(const Options& o, std::ostream& out) {
    auto g = std::make_shared<const SimpleGraph>(io::load_graph(o.graph_path));
    auto n = load(o.codomain_path, o.allow_loops);
    auto dom = share(graphic(*g));
    auto tau = load_hom(o.hom_path, dom, n);
    auto d = decision_graph(n, /*universal=*/!o.full_rep, o.caps);
    BitVec b = o.base_bits.empty() ? BitVec(d.coords()) : BitVec::from_string(o.base_bits);
    auto ctx = make_tutte_context(g, o.root);
    auto phi = tutte_phi(tau, ctx, b, d);
    std::ostringstream os;
    io::write_colouring(os, phi);
    out << os.str();
    maybe_write(o.out_path, os.str());
    return 0;
}

inline int cmd_tutte_tau(const Options& o, std::ostream& out) {
    auto g = std::make_shared<const SimpleGraph>(io::load_graph(o.graph_path));
    auto n = load(o.codomain_path, o.allow_loops);
    auto dom = share(graphic(*g));
    auto d = decision_graph(n, /*universal=*/!o.full_rep, o.caps);
    auto labels = io::load_colouring(o.colouring_path);
    auto phi = io::colouring_from_labels(g, d.graph, labels);
    auto tau = tutte_tau(phi, d, dom);
    std::ostringstream os;
    io::write_hom(os, tau);
    out << os.str();
    maybe_write(o.out_path, os.str());
    return 0;
}

inline int cmd_kempe_decide(const Options& o, std::ostream& out) {
    auto g = std::make_shared<const SimpleGraph>(io::load_graph(o.graph_path));
    auto n = load(o.codomain_path, o.allow_loops);
    auto d = decision_graph(n, /*universal=*/!o.full_rep, o.caps);
    auto phi = io::colouring_from_labels(g, d.graph, io::load_colouring(o.from_path));
    auto psi = io::colouring_from_labels(g, d.graph, io::load_colouring(o.to_path));
    auto path = kempe_decide(phi, psi, o.caps);
    if (!path) {
        out << "NO\n";
        return 1;
    }
    out << "YES length=" << (path->size() - 1) << "\n";
    if (o.want_path) {
        std::ostringstream os;
        os << "# matrec gcol-path v1\n";
        for (const auto& step : *path) {
            for (std::size_t v = 0; v < step.image.size(); ++v)
                os << (v ? " " : "") << step.label(static_cast<std::uint32_t>(v)).to_string();
            os << "\n";
        }
        if (o.out_path.empty())
            out << os.str();
        else
            io::write_file(o.out_path, os.str());
    }
    return 0;
}

inline int cmd_kempe_neighbors(const Options& o, std::ostream& out) {
    auto g = std::make_shared<const SimpleGraph>(io::load_graph(o.graph_path));
    auto n = load(o.codomain_path, o.allow_loops);
    auto d = decision_graph(n, /*universal=*/!o.full_rep, o.caps);
    auto phi = io::colouring_from_labels(g, d.graph, io::load_colouring(o.colouring_path));
    for (const auto& nb : kempe_neighbors(phi)) {
        for (std::size_t v = 0; v < nb.image.size(); ++v)
            out << (v ? " " : "") << nb.label(static_cast<std::uint32_t>(v)).to_string();
        out << "\n";
    }
    return 0;
}

inline int cmd_dismantle(const Options& o, std::ostream& out) {
    auto n = load(o.codomain_path, o.allow_loops);
    std::optional<std::vector<DismantlingStep>> seq;
    if (!o.target_path.empty()) {
        auto target = io::load_matroid(o.target_path, o.target_loops || o.allow_loops);
        seq = dismantles_to(n, target, o.caps);
    } else {
        seq = triviality_certificate(n, o.caps);
    }
    if (!seq) {
        out << "NO\n";
        return 1;
    }
    out << "YES steps=" << seq->size() << "\n";
    for (const auto& step : *seq) {
        out << "retraction=";
        print_hom_line(out, step.retraction);
        out << "image-points=";
        for (std::size_t i = 0; i < step.fixed.size(); ++i)
            out << (i ? "," : "") << step.fixed[i];
        out << "\n";
    }
    return 0;
}

inline int cmd_gadget_build(const Options& o, std::ostream& out) {
    auto m = load(o.matroid_path, o.allow_loops);
    auto n = load(o.codomain_path, o.allow_loops);
    auto g = build_gadget(m, n, o.caps, o.clique_n);
    out << "clique_n=" << g.clique_n << " points=" << g.gadget->size()
        << " rank=" << g.gadget->rank() << "\n";
    if (!o.out_path.empty()) {
        std::ostringstream bm;
        io::write_matroid(bm, *g.gadget);
        io::write_file(o.out_path + ".bm", bm.str());
        std::ostringstream map;
        map << "# matrec gadget-map v1\n";
        map << "# twin pairs: point twin\n";
        for (std::uint32_t e = 0; e < g.m_size(); ++e) map << e << " " << g.twin(e) << "\n";
        map << "# clique block: start n\n";
        map << "clique " << g.clique_block() << " " << g.clique_n << "\n";
        io::write_file(o.out_path + ".map", map.str());
    }
    return 0;
}

inline int cmd_gadget_lift(const Options& o, std::ostream& out) {
    auto m = load(o.matroid_path, o.allow_loops);
    auto n = load(o.codomain_path, o.allow_loops);
    auto g = build_gadget(m, n, o.caps, o.clique_n);
    auto tau = load_hom(o.hom_path, m, n);
    auto s = lift_hom(g, tau);
    std::ostringstream os;
    io::write_hom(os, s);
    out << os.str();
    maybe_write(o.out_path, os.str());
    return 0;
}

inline int cmd_gadget_verify(const Options& o, std::ostream& out) {
    auto m = load(o.matroid_path, o.allow_loops);
    auto n = load(o.codomain_path, o.allow_loops);
    auto report = verify_reduction(m, n, o.caps, o.clique_n);
    out << report.text();
    out << report.summary_line() << "\n";
    maybe_write(o.report_path, report.text() + report.summary_line() + "\n");
    return report.ok() ? 0 : 1;
}

inline int cmd_verify(std::ostream& out) {
    auto results = run_verification_suite();
    bool all = true;
    std::size_t i = 0;
    char line[512];
    for (const auto& r : results) {
        ++i;
        std::snprintf(line, sizeof line, "[%2zu/%zu] %-38s %s (%.2fs) %s", i, results.size(),
                      r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
        out << line << "\n";
        all = all && r.pass;
    }
    out << (all ? "all checks passed" : "FAILURES above") << "\n";
    return all ? 0 : 1;
}

} // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    Options o;

    CLI::App app{"exact toolkit for binary-matroid homomorphisms and recolouring"};
    app.require_subcommand(1);
    app.add_option("--max-rank", o.caps.max_rank_exponent,
                   "cap on row/cycle space sweep exponents");
    app.add_option("--max-states", o.caps.max_states, "cap on BFS visited states");
    app.add_option("--max-homs", o.caps.max_homs, "cap on hom enumeration candidates");
    app.add_flag("--allow-loops", o.allow_loops, "accept all-zero columns when loading");

    auto add_m = [&](CLI::App* c) {
        c->add_option("-m,--matroid", o.matroid_path, "domain matroid (.bm)")->required();
    };
    auto add_n = [&](CLI::App* c) {
        c->add_option("-n,--codomain", o.codomain_path, "codomain matroid (.bm)")->required();
    };
    auto add_g = [&](CLI::App* c) {
        c->add_option("-g,--graph", o.graph_path, "graph (.edges)")->required();
    };

    auto* check = app.add_subcommand("check-hom", "test whether a point map is a homomorphism");
    add_m(check);
    add_n(check);
    check->add_option("-t,--hom", o.hom_path, "point map (.hom)")->required();
    check->add_flag("--slow", o.slow, "recheck against every circuit");

    auto* enumh = app.add_subcommand("enum-homs", "list all homomorphisms");
    add_m(enumh);
    add_n(enumh);
    enumh->add_flag("--count", o.count_only, "print the count only");
    enumh->add_option("-o,--out", o.out_path, "write the list to a file");

    auto* recol = app.add_subcommand("recol", "decide recolouring reachability");
    add_m(recol);
    add_n(recol);
    recol->add_option("--from", o.from_path, "start map (.hom)")->required();
    recol->add_option("--to", o.to_path, "goal map (.hom)")->required();
    recol->add_flag("--path", o.want_path, "print the witnessed path");
    recol->add_option("-o,--out", o.out_path, "write the path to a file");

    auto* comps = app.add_subcommand("components", "connected components of Col(M, N)");
    add_m(comps);
    add_n(comps);
    comps->add_option("--dot", o.dot_path, "write the graph in DOT format");

    auto* dec = app.add_subcommand("decision-graph", "decision graph summary");
    add_n(dec);
    dec->add_flag("--full", o.full_rep, "use the ambient representation, not the reduced one");
    dec->add_option("--dot", o.dot_path, "write the graph in DOT format");

    auto* tutte = app.add_subcommand("tutte", "move between matroid and graph colourings");
    auto* tphi = tutte->add_subcommand("phi", "graph colouring from a matroid colouring");
    add_g(tphi);
    add_n(tphi);
    tphi->add_option("-t,--hom", o.hom_path, "matroid colouring (.hom)")->required();
    tphi->add_option("-b,--base", o.base_bits, "base colour bits at the root (default 0)");
    tphi->add_option("--root", o.root, "root vertex (default 0)");
    tphi->add_flag("--full", o.full_rep, "use the ambient representation");
    tphi->add_option("-o,--out", o.out_path, "write the colouring to a file");
    auto* ttau = tutte->add_subcommand("tau", "matroid colouring from a graph colouring");
    add_g(ttau);
    add_n(ttau);
    ttau->add_option("-c,--colouring", o.colouring_path, "graph colouring (.gcol)")->required();
    ttau->add_flag("--full", o.full_rep, "use the ambient representation");
    ttau->add_option("-o,--out", o.out_path, "write the map to a file");
    tutte->require_subcommand(1);

    auto* kempe = app.add_subcommand("kempe", "Kempe recolouring on decision-graph targets");
    auto* kdec = kempe->add_subcommand("decide", "decide Kempe reachability");
    add_g(kdec);
    add_n(kdec);
    kdec->add_option("--from", o.from_path, "start colouring (.gcol)")->required();
    kdec->add_option("--to", o.to_path, "goal colouring (.gcol)")->required();
    kdec->add_flag("--path", o.want_path, "print the path");
    kdec->add_option("-o,--out", o.out_path, "write the path to a file");
    auto* knb = kempe->add_subcommand("neighbors", "list Kempe moves from a colouring");
    add_g(knb);
    add_n(knb);
    knb->add_option("-c,--colouring", o.colouring_path, "graph colouring (.gcol)")->required();
    kempe->require_subcommand(1);

    auto* dis = app.add_subcommand("dismantle", "search for dismantling retractions");
    add_n(dis);
    dis->add_option("--target", o.target_path, "target matroid (.bm); default: loop or edge");
    dis->add_flag("--target-loops", o.target_loops, "allow loops when loading the target");
    dis->add_flag("--trivial", o.trivial, "certify towards the loop or the edge (default)");

    auto* gadget = app.add_subcommand("gadget", "twin-extension gadget operations");
    auto* gbuild = gadget->add_subcommand("build", "construct M* and its index map");
    add_m(gbuild);
    add_n(gbuild);
    gbuild->add_option("-o,--out", o.out_path, "output prefix for .bm and .map files");
    gbuild->add_option("--clique", o.clique_n, "force the embedded clique size");
    auto* glift = gadget->add_subcommand("lift", "lift a source colouring to M*");
    add_m(glift);
    add_n(glift);
    glift->add_option("-t,--hom", o.hom_path, "source colouring (.hom)")->required();
    glift->add_option("--clique", o.clique_n, "force the embedded clique size");
    glift->add_option("-o,--out", o.out_path, "write the lifted map to a file");
    auto* gverify = gadget->add_subcommand("verify", "exhaustive reduction equivalence check");
    add_m(gverify);
    add_n(gverify);
    gverify->add_option("--clique", o.clique_n, "force the embedded clique size");
    gverify->add_option("--report", o.report_path, "write the report to a file");
    gadget->require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the built-in verification suite");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(check)) return cmd_check_hom(o, out);
        if (app.got_subcommand(enumh)) return cmd_enum_homs(o, out);
        if (app.got_subcommand(recol)) return cmd_recol(o, out);
        if (app.got_subcommand(comps)) return cmd_components(o, out);
        if (app.got_subcommand(dec)) return cmd_decision_graph(o, out);
        if (app.got_subcommand(tutte)) {
            if (tutte->got_subcommand(tphi)) return cmd_tutte_phi(o, out);
            return cmd_tutte_tau(o, out);
        }
        if (app.got_subcommand(kempe)) {
            if (kempe->got_subcommand(kdec)) return cmd_kempe_decide(o, out);
            return cmd_kempe_neighbors(o, out);
        }
        if (app.got_subcommand(dis)) return cmd_dismantle(o, out);
        if (app.got_subcommand(gadget)) {
            if (gadget->got_subcommand(gbuild)) return cmd_gadget_build(o, out);
            if (gadget->got_subcommand(glift)) return cmd_gadget_lift(o, out);
            return cmd_gadget_verify(o, out);
        }
        if (app.got_subcommand(verify)) return cmd_verify(out);
        err << "no subcommand\n";
        return 2;
    } catch (const capacity_error& e) {
        err << "capacity: " << e.what() << "\n";
        return 3;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace matrec
