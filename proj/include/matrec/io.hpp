#pragma once

// Text formats and DOT export.
//
//   .bm     one column per line as a bitstring, leftmost char = row 0
//   .edges  one "u v" pair per line, 0-based vertex ids
//   .hom    one line of whitespace-separated codomain point indices
//   .gcol   one line of whitespace-separated vertex colour bitstrings
//
// '#' starts a comment anywhere; writers emit a versioned header comment.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matrec/decision.hpp"
#include "matrec/graphs.hpp"
#include "matrec/hom.hpp"
#include "matrec/matroid.hpp"
#include "matrec/recolor.hpp"

namespace matrec::io {

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

inline std::vector<std::string> content_tokens(std::istream& in) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(strip_comment(line));
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    return tokens;
}

// ---- matroids (.bm) ----

inline BinaryMatroid read_matroid(std::istream& in, bool allow_loops = false) {
    std::vector<BitVec> cols;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(strip_comment(line));
        std::string tok;
        while (ls >> tok) cols.push_back(BitVec::from_string(tok));
    }
    if (cols.empty()) throw std::invalid_argument("matroid file: no columns");
    return BinaryMatroid::from_columns(std::move(cols), allow_loops);
}

inline void write_matroid(std::ostream& out, const BinaryMatroid& m) {
    out << "# matrec bm v1\n";
    for (const auto& p : m.points()) out << p.to_string() << "\n";
}

// ---- graphs (.edges) ----

inline SimpleGraph read_graph(std::istream& in) {
    auto tokens = content_tokens(in);
    if (tokens.size() % 2 != 0) throw std::invalid_argument("edge file: odd token count");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::size_t n = 0;
    for (std::size_t i = 0; i < tokens.size(); i += 2) {
        auto u = static_cast<std::uint32_t>(std::stoul(tokens[i]));
        auto v = static_cast<std::uint32_t>(std::stoul(tokens[i + 1]));
        n = std::max<std::size_t>(n, std::max(u, v) + 1);
        edges.emplace_back(u, v);
    }
    return SimpleGraph::from_edges(n, std::move(edges));
}

inline void write_graph(std::ostream& out, const SimpleGraph& g) {
    out << "# matrec edges v1\n";
    for (auto [u, v] : g.edges) out << u << " " << v << "\n";
}

// ---- homomorphisms (.hom) ----

inline std::vector<std::uint32_t> read_hom_image(std::istream& in) {
    std::vector<std::uint32_t> image;
    for (const auto& tok : content_tokens(in))
        image.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    return image;
}

inline void write_hom(std::ostream& out, const MatroidHom& h) {
    out << "# matrec hom v1\n";
    for (std::size_t e = 0; e < h.image.size(); ++e)
        out << (e ? " " : "") << h.image[e];
    out << "\n";
}

// A witnessed path as a sequence of hom lines.
inline void write_path(std::ostream& out, const RecolPath& path) {
    out << "# matrec hom-path v1\n";
    for (std::size_t k = 0; k < path.homs.size(); ++k) {
        if (k) {
            out << "# move: cocircuit {";
            bool first = true;
            path.moves[k - 1].cocircuit.for_each_set([&](std::size_t e) {
                out << (first ? "" : ",") << e;
                first = false;
            });
            out << "} constant " << path.moves[k - 1].constant.to_string() << "\n";
        }
        const auto& h = path.homs[k];
        for (std::size_t e = 0; e < h.image.size(); ++e) out << (e ? " " : "") << h.image[e];
        out << "\n";
    }
}

// ---- graph colourings (.gcol: vertex colour bitstrings) ----

inline std::vector<BitVec> read_colouring(std::istream& in) {
    std::vector<BitVec> labels;
    for (const auto& tok : content_tokens(in)) labels.push_back(BitVec::from_string(tok));
    return labels;
}

inline void write_colouring(std::ostream& out, const GraphColouring& phi) {
    out << "# matrec gcol v1\n";
    for (std::size_t v = 0; v < phi.image.size(); ++v)
        out << (v ? " " : "") << phi.label(static_cast<std::uint32_t>(v)).to_string();
    out << "\n";
}

inline GraphColouring colouring_from_labels(std::shared_ptr<const SimpleGraph> src,
                                            std::shared_ptr<const SimpleGraph> dst,
                                            const std::vector<BitVec>& labels) {
    if (labels.size() != src->n)
        throw std::invalid_argument("colouring: one colour per vertex required");
    std::vector<std::uint32_t> image(labels.size());
    for (std::size_t v = 0; v < labels.size(); ++v) {
        auto it = std::find(dst->labels.begin(), dst->labels.end(), labels[v]);
        if (it == dst->labels.end())
            throw std::invalid_argument("colouring: colour is not a vertex of the target");
        image[v] = static_cast<std::uint32_t>(it - dst->labels.begin());
    }
    GraphColouring phi{std::move(src), std::move(dst), std::move(image)};
    if (!is_graph_hom(*phi.source, *phi.target, phi.image))
        throw std::invalid_argument("colouring: not a homomorphism");
    return phi;
}

// ---- DOT export ----

inline std::string dot_decision_graph(const DecisionGraph& d) {
    std::ostringstream os;
    os << "// matrec dot v1\n";
    os << "graph decision {\n";
    for (std::uint32_t v = 0; v < d.graph->n; ++v)
        os << "  v" << v << " [label=\"" << d.graph->labels[v].to_string() << "\"];\n";
    for (auto [u, v] : d.graph->edges) os << "  v" << u << " -- v" << v << ";\n";
    os << "}\n";
    return os.str();
}

inline std::string dot_col_graph(const RecolouringGraph& g) {
    std::ostringstream os;
    os << "// matrec dot v1\n";
    os << "graph col {\n";
    for (std::uint32_t i = 0; i < g.homs.size(); ++i) {
        os << "  h" << i << " [label=\"";
        for (std::size_t e = 0; e < g.homs[i].image.size(); ++e)
            os << (e ? " " : "") << g.homs[i].image[e];
        os << "\"];\n";
    }
    for (const auto& e : g.edges) {
        os << "  h" << e.a << " -- h" << e.b << " [label=\"{";
        bool first = true;
        e.witness.cocircuit.for_each_set([&](std::size_t p) {
            os << (first ? "" : ",") << p;
            first = false;
        });
        os << "} " << e.witness.constant.to_string() << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

inline std::string dot_graph(const SimpleGraph& g, const char* name = "g") {
    std::ostringstream os;
    os << "// matrec dot v1\n";
    os << "graph " << name << " {\n";
    for (std::uint32_t v = 0; v < g.n; ++v) {
        os << "  v" << v;
        if (g.labels.size() == g.n) os << " [label=\"" << g.labels[v].to_string() << "\"]";
        os << ";\n";
    }
    for (auto [u, v] : g.edges) os << "  v" << u << " -- v" << v << ";\n";
    os << "}\n";
    return os.str();
}

// ---- file helpers ----

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
}

inline BinaryMatroid load_matroid(const std::string& path, bool allow_loops = false) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_matroid(in, allow_loops);
}

inline SimpleGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_graph(in);
}

inline std::vector<std::uint32_t> load_hom_image(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_hom_image(in);
}

inline std::vector<BitVec> load_colouring(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_colouring(in);
}

} // namespace matrec::io
