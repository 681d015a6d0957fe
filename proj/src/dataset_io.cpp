#include "ggeval/dataset_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ggeval/error.hpp"

namespace ggeval {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& name, std::size_t line, const std::string& why) {
    std::ostringstream os;
    os << name << ": parse error at line " << line << ": " << why;
    throw ParseError(os.str());
}

std::string scalar_to_string(const json& v) {
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

Graph parse_graph_line(const json& rec, const std::string& name, std::size_t line) {
    if (!rec.is_object())
        parse_fail(name, line, "expected an object");
    if (!rec.contains("id") || !rec["id"].is_string())
        parse_fail(name, line, "missing string field \"id\"");
    if (!rec.contains("n") || !rec["n"].is_number_integer())
        parse_fail(name, line, "missing integer field \"n\"");
    if (!rec.contains("edges") || !rec["edges"].is_array())
        parse_fail(name, line, "missing array field \"edges\"");

    Graph g;
    g.id = rec["id"].get<std::string>();
    g.n = rec["n"].get<int>();
    g.edges.reserve(rec["edges"].size());
    for (const auto& e : rec["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            parse_fail(name, line, "each edge must be a pair of integers");
        g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return g;
}

}  // namespace

GraphSet parse_dataset(std::istream& in, const std::string& name) {
    GraphSet set;
    set.name = name;

    std::string raw;
    std::size_t line_no = 0;
    bool first_record = true;
    while (std::getline(in, raw)) {
        ++line_no;
        if (raw.find_first_not_of(" \t\r") == std::string::npos)
            continue;

        json rec;
        try {
            rec = json::parse(raw);
        } catch (const json::parse_error& e) {
            parse_fail(name, line_no, e.what());
        }

        if (first_record && rec.is_object() && rec.contains("_meta")) {
            first_record = false;
            const auto& meta = rec["_meta"];
            if (!meta.is_object())
                parse_fail(name, line_no, "\"_meta\" must be an object");
            for (const auto& [key, value] : meta.items()) {
                if (!value.is_primitive())
                    parse_fail(name, line_no, "\"_meta\" values must be scalars");
                set.meta[key] = scalar_to_string(value);
            }
            continue;
        }
        first_record = false;

        Graph g = parse_graph_line(rec, name, line_no);
        require_valid(g);
        set.graphs.push_back(std::move(g));
    }

    if (set.graphs.empty())
        throw ValidationError(name + ": empty dataset");
    return set;
}

GraphSet load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    return parse_dataset(in, path.filename().string());
}

std::string serialize_dataset(const GraphSet& set) {
    std::string out;
    if (!set.meta.empty()) {
        json meta = json::object();
        for (const auto& [key, value] : set.meta)
            meta[key] = value;
        json line = json::object();
        line["_meta"] = meta;
        out += line.dump();
        out += '\n';
    }
    for (const Graph& g : set.graphs) {
        json rec;
        rec["id"] = g.id;
        rec["n"] = g.n;
        json edges = json::array();
        for (const auto& [u, v] : g.edges)
            edges.push_back(json::array({u, v}));
        rec["edges"] = std::move(edges);
        out += rec.dump();
        out += '\n';
    }
    return out;
}

void save_dataset(const GraphSet& set, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_dataset(set));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path dir = path.parent_path();
    if (!dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() +
                      ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace ggeval
