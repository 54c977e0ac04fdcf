#include "soa/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace soa {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) {
        throw ParseError(where + ": expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(where + ": missing \"" + key + "\"");
    }
    return *it;
}

std::size_t natural(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ParseError(where + ": expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

std::string text(const Json& j, const std::string& where) {
    if (!j.is_string()) {
        throw ParseError(where + ": expected a string");
    }
    return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& where) {
    if (!j.is_array()) {
        throw ParseError(where + ": expected an array");
    }
    return j;
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items()) {
        if (!allowed.count(k)) {
            throw ParseError(where + ": unknown key \"" + k + "\"");
        }
    }
}

std::size_t object_index(const FiniteCategory& c, const Json& j, const std::string& where) {
    auto name = text(j, where);
    auto o = c.find_object(name);
    if (!o) {
        throw ParseError(where + ": unknown object '" + name + "'");
    }
    return *o;
}

std::size_t arrow_index(const FiniteCategory& c, const Json& j, const std::string& where) {
    auto name = text(j, where);
    auto a = c.find_arrow(name);
    if (!a) {
        throw ParseError(where + ": unknown arrow '" + name + "'");
    }
    return *a;
}

FiniteMap map_at(const Json& j, const std::string& where) {
    try {
        return map_from_json(j);
    } catch (const InvalidMap& e) {
        throw ParseError(where + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

template <class Set>
void read_composites(const Json& list, const FiniteCategory& c, const std::string& where, Set&& set) {
    for (std::size_t k = 0; k < array(list, where).size(); ++k) {
        const auto& e = list[k];
        const std::string at = where + "[" + std::to_string(k) + "]";
        only_keys(e, {"left", "right", "result"}, at);
        set(arrow_index(c, field(e, "left", at), at + ".left"), arrow_index(c, field(e, "right", at), at + ".right"),
            arrow_index(c, field(e, "result", at), at + ".result"));
    }
}

Json composite_entry(const std::string& left, const std::string& right, const std::string& result) {
    Json e = Json::object();
    e["left"] = left;
    e["right"] = right;
    e["result"] = result;
    return e;
}

} // namespace

Json parse_json(std::string_view source) {
    try {
        return Json::parse(source);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, source.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (source[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
    }
}

Json load_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_json(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_json(const std::filesystem::path& path, const Json& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write " + path.string());
    }
    out << dump(value);
}

std::string dump(const Json& value) {
    return value.dump(2) + "\n";
}

Json to_json(const FiniteMap& f) {
    Json j = Json::object();
    j["dom"] = f.dom().size;
    j["cod"] = f.cod().size;
    j["table"] = f.table();
    return j;
}

Json to_json(const ArrowObject& f) {
    Json j = Json::object();
    j["top"] = f.top().size;
    j["bot"] = f.bot().size;
    j["map"] = to_json(f.map());
    return j;
}

FiniteMap map_from_json(const Json& j) {
    only_keys(j, {"dom", "cod", "table"}, "map");
    const std::size_t dom = natural(field(j, "dom", "map"), "map.dom");
    const std::size_t cod = natural(field(j, "cod", "map"), "map.cod");
    const Json& table = array(field(j, "table", "map"), "map.table");
    std::vector<Elem> values;
    for (std::size_t k = 0; k < table.size(); ++k) {
        values.push_back(static_cast<Elem>(natural(table[k], "map.table[" + std::to_string(k) + "]")));
    }
    try {
        return FiniteMap(FinSet{dom}, FinSet{cod}, std::move(values));
    } catch (const InvalidMap& e) {
        throw ParseError(std::string("map: ") + e.what());
    }
}

ArrowObject arrow_from_json(const Json& j) {
    if (j.is_object() && j.contains("map")) {
        only_keys(j, {"top", "bot", "map"}, "arrow");
        FiniteMap m = map_at(j["map"], "arrow.map");
        if (j.contains("top") && natural(j["top"], "arrow.top") != m.dom().size) {
            throw ParseError("arrow: top does not match the map's domain");
        }
        if (j.contains("bot") && natural(j["bot"], "arrow.bot") != m.cod().size) {
            throw ParseError("arrow: bot does not match the map's codomain");
        }
        return ArrowObject(std::move(m));
    }
    return ArrowObject(map_at(j, "arrow"));
}

Presentation presentation_from_json(const Json& j) {
    if (!j.is_object()) {
        throw ParseError("presentation: expected an object");
    }
    only_keys(j, {"name", "description", "objects", "hmorphisms", "comp", "vmorphisms", "squares", "square_comp", "vid",
                  "square_vid", "vcomp", "square_vcomp"},
              "presentation");
    Presentation p;
    const Json& objects = field(j, "objects", "presentation");
    if (!objects.is_object()) {
        throw ParseError("objects: expected an object of sizes");
    }
    for (const auto& [name, size] : objects.items()) {
        p.horizontal.add_object(name, "1_" + name);
        const FinSet s{natural(size, "objects." + name)};
        p.object_sizes.push_back(s);
        p.hmaps.push_back(FiniteMap::identity(s));
    }

    if (j.contains("hmorphisms")) {
        const Json& hs = array(j["hmorphisms"], "hmorphisms");
        for (std::size_t k = 0; k < hs.size(); ++k) {
            const std::string at = "hmorphisms[" + std::to_string(k) + "]";
            only_keys(hs[k], {"name", "dom", "cod", "table"}, at);
            const auto name = text(field(hs[k], "name", at), at + ".name");
            if (p.horizontal.find_arrow(name)) {
                throw ParseError(at + ": duplicate arrow name '" + name + "'");
            }
            const auto dom = object_index(p.horizontal, field(hs[k], "dom", at), at + ".dom");
            const auto cod = object_index(p.horizontal, field(hs[k], "cod", at), at + ".cod");
            Json m = Json::object();
            m["dom"] = p.object_sizes[dom].size;
            m["cod"] = p.object_sizes[cod].size;
            m["table"] = field(hs[k], "table", at);
            p.horizontal.add_arrow(name, dom, cod);
            p.hmaps.push_back(map_at(m, at));
        }
    }
    if (j.contains("comp")) {
        read_composites(j["comp"], p.horizontal, "comp", [&](auto a, auto b, auto c) { p.horizontal.set_composite(a, b, c); });
    }

    if (j.contains("vmorphisms")) {
        const Json& vs = array(j["vmorphisms"], "vmorphisms");
        for (std::size_t k = 0; k < vs.size(); ++k) {
            const std::string at = "vmorphisms[" + std::to_string(k) + "]";
            only_keys(vs[k], {"name", "vdom", "vcod", "umap"}, at);
            const auto name = text(field(vs[k], "name", at), at + ".name");
            if (p.vertical.find_object(name)) {
                throw ParseError(at + ": duplicate vertical arrow name '" + name + "'");
            }
            const auto src = object_index(p.horizontal, field(vs[k], "vdom", at), at + ".vdom");
            const auto tgt = object_index(p.horizontal, field(vs[k], "vcod", at), at + ".vcod");
            p.vertical.add_object(name, "1_" + name);
            p.vsrc.push_back(src);
            p.vtgt.push_back(tgt);
            p.umaps.push_back(map_at(field(vs[k], "umap", at), at + ".umap"));
            p.square_top.push_back(p.horizontal.identity(src));
            p.square_bot.push_back(p.horizontal.identity(tgt));
        }
    }
    if (j.contains("squares")) {
        const Json& ss = array(j["squares"], "squares");
        for (std::size_t k = 0; k < ss.size(); ++k) {
            const std::string at = "squares[" + std::to_string(k) + "]";
            only_keys(ss[k], {"name", "vsrc", "vdst", "h_top", "h_bot"}, at);
            const auto name = text(field(ss[k], "name", at), at + ".name");
            if (p.vertical.find_arrow(name)) {
                throw ParseError(at + ": duplicate square name '" + name + "'");
            }
            const auto src = object_index(p.vertical, field(ss[k], "vsrc", at), at + ".vsrc");
            const auto dst = object_index(p.vertical, field(ss[k], "vdst", at), at + ".vdst");
            p.vertical.add_arrow(name, src, dst);
            p.square_top.push_back(arrow_index(p.horizontal, field(ss[k], "h_top", at), at + ".h_top"));
            p.square_bot.push_back(arrow_index(p.horizontal, field(ss[k], "h_bot", at), at + ".h_bot"));
        }
    }
    if (j.contains("square_comp")) {
        read_composites(j["square_comp"], p.vertical, "square_comp",
                        [&](auto a, auto b, auto c) { p.vertical.set_composite(a, b, c); });
    }

    const bool has_vertical = j.contains("vid") || j.contains("square_vid") || j.contains("vcomp") || j.contains("square_vcomp");
    if (has_vertical) {
        VerticalStructure vs;
        const Json& vid = field(j, "vid", "presentation");
        if (!vid.is_object()) {
            throw ParseError("vid: expected an object");
        }
        vs.vid.assign(p.horizontal.num_objects(), 0);
        std::vector<bool> seen(p.horizontal.num_objects(), false);
        for (const auto& [obj, v] : vid.items()) {
            const auto o = object_index(p.horizontal, Json(obj), "vid");
            vs.vid[o] = object_index(p.vertical, v, "vid." + obj);
            seen[o] = true;
        }
        for (std::size_t o = 0; o < seen.size(); ++o) {
            if (!seen[o]) {
                throw ParseError("vid: no vertical identity for object '" + p.horizontal.object_name(o) + "'");
            }
        }
        vs.square_vid.assign(p.horizontal.num_arrows(), 0);
        std::vector<bool> square_seen(p.horizontal.num_arrows(), false);
        if (j.contains("square_vid")) {
            if (!j["square_vid"].is_object()) {
                throw ParseError("square_vid: expected an object");
            }
            for (const auto& [h, r] : j["square_vid"].items()) {
                const auto a = arrow_index(p.horizontal, Json(h), "square_vid");
                vs.square_vid[a] = arrow_index(p.vertical, r, "square_vid." + h);
                square_seen[a] = true;
            }
        }
        for (std::size_t a = 0; a < square_seen.size(); ++a) {
            if (square_seen[a]) {
                continue;
            }
            const auto& arrow = p.horizontal.arrow(a);
            if (!p.horizontal.is_identity(a)) {
                throw ParseError("square_vid: no vertical identity square for arrow '" + arrow.name + "'");
            }
            vs.square_vid[a] = p.vertical.identity(vs.vid[arrow.dom]);
        }
        auto vertical_pairs = [&](const Json& list, const std::string& where, bool squares) {
            for (std::size_t k = 0; k < array(list, where).size(); ++k) {
                const auto& e = list[k];
                const std::string at = where + "[" + std::to_string(k) + "]";
                only_keys(e, {"left", "right", "result"}, at);
                auto idx = [&](const char* key) {
                    return squares ? arrow_index(p.vertical, field(e, key, at), at + "." + key)
                                   : object_index(p.vertical, field(e, key, at), at + "." + key);
                };
                const auto l = idx("left");
                const auto r = idx("right");
                const auto c = idx("result");
                (squares ? vs.square_vcomp : vs.vcomp)[{l, r}] = c;
            }
        };
        if (j.contains("vcomp")) {
            vertical_pairs(j["vcomp"], "vcomp", false);
        }
        if (j.contains("square_vcomp")) {
            vertical_pairs(j["square_vcomp"], "square_vcomp", true);
        }
        p.vstructure = std::move(vs);
        infer_unit_composites(p);
    }

    auto report = validate(p);
    if (!report.ok()) {
        throw InvalidPresentation(report.to_string());
    }
    return p;
}

Presentation parse_presentation(std::string_view source) {
    return presentation_from_json(parse_json(source));
}

Presentation load_presentation(const std::filesystem::path& path) {
    return presentation_from_json(load_json(path));
}

Json to_json(const Presentation& p) {
    const auto& H = p.horizontal;
    const auto& V = p.vertical;
    Json j = Json::object();
    Json objects = Json::object();
    for (std::size_t o = 0; o < H.num_objects(); ++o) {
        objects[H.object_name(o)] = p.object_sizes[o].size;
    }
    j["objects"] = objects;

    Json hs = Json::array();
    for (std::size_t a = 0; a < H.num_arrows(); ++a) {
        if (H.is_identity(a)) {
            continue;
        }
        const auto& arrow = H.arrow(a);
        Json e = Json::object();
        e["name"] = arrow.name;
        e["dom"] = H.object_name(arrow.dom);
        e["cod"] = H.object_name(arrow.cod);
        e["table"] = p.hmaps[a].table();
        hs.push_back(e);
    }
    j["hmorphisms"] = hs;
    Json comp = Json::array();
    for (const auto& [pair, result] : H.composites()) {
        if (!H.is_identity(pair.first) && !H.is_identity(pair.second)) {
            comp.push_back(composite_entry(H.arrow(pair.first).name, H.arrow(pair.second).name, H.arrow(result).name));
        }
    }
    j["comp"] = comp;

    Json vs = Json::array();
    for (std::size_t v = 0; v < V.num_objects(); ++v) {
        Json e = Json::object();
        e["name"] = V.object_name(v);
        e["vdom"] = H.object_name(p.vsrc[v]);
        e["vcod"] = H.object_name(p.vtgt[v]);
        e["umap"] = to_json(p.umaps[v]);
        vs.push_back(e);
    }
    j["vmorphisms"] = vs;
    Json squares = Json::array();
    for (std::size_t r = 0; r < V.num_arrows(); ++r) {
        if (V.is_identity(r)) {
            continue;
        }
        const auto& arrow = V.arrow(r);
        Json e = Json::object();
        e["name"] = arrow.name;
        e["vsrc"] = V.object_name(arrow.dom);
        e["vdst"] = V.object_name(arrow.cod);
        e["h_top"] = H.arrow(p.square_top[r]).name;
        e["h_bot"] = H.arrow(p.square_bot[r]).name;
        squares.push_back(e);
    }
    j["squares"] = squares;
    Json square_comp = Json::array();
    for (const auto& [pair, result] : V.composites()) {
        if (!V.is_identity(pair.first) && !V.is_identity(pair.second)) {
            square_comp.push_back(composite_entry(V.arrow(pair.first).name, V.arrow(pair.second).name, V.arrow(result).name));
        }
    }
    j["square_comp"] = square_comp;

    if (!p.vstructure) {
        return j;
    }
    const auto& st = *p.vstructure;
    Json vid = Json::object();
    for (std::size_t o = 0; o < H.num_objects(); ++o) {
        vid[H.object_name(o)] = V.object_name(st.vid[o]);
    }
    j["vid"] = vid;
    Json square_vid = Json::object();
    for (std::size_t a = 0; a < H.num_arrows(); ++a) {
        if (H.is_identity(a) && st.square_vid[a] == V.identity(st.vid[H.arrow(a).dom])) {
            continue;
        }
        square_vid[H.arrow(a).name] = V.arrow(st.square_vid[a]).name;
    }
    j["square_vid"] = square_vid;

    std::vector<bool> is_vid(V.num_objects(), false);
    for (auto v : st.vid) {
        is_vid[v] = true;
    }
    Json vcomp = Json::array();
    for (const auto& [pair, result] : st.vcomp) {
        const auto [l, r] = pair;
        const bool forced = (is_vid[l] && st.vid[p.vsrc[r]] == l && result == r) ||
                            (is_vid[r] && st.vid[p.vtgt[l]] == r && result == l);
        if (!forced) {
            vcomp.push_back(composite_entry(V.object_name(l), V.object_name(r), V.object_name(result)));
        }
    }
    j["vcomp"] = vcomp;

    std::vector<bool> is_square_vid(V.num_arrows(), false);
    for (auto r : st.square_vid) {
        is_square_vid[r] = true;
    }
    Json square_vcomp = Json::array();
    for (const auto& [pair, result] : st.square_vcomp) {
        const auto [u, l] = pair;
        const bool forced = (is_square_vid[u] && st.square_vid[p.square_top[l]] == u && result == l) ||
                            (is_square_vid[l] && st.square_vid[p.square_bot[u]] == l && result == u) ||
                            (V.is_identity(u) && V.is_identity(l) && V.is_identity(result) &&
                             st.vcomp.count({V.arrow(u).dom, V.arrow(l).dom}) &&
                             V.identity(st.vcomp.at({V.arrow(u).dom, V.arrow(l).dom})) == result);
        if (!forced) {
            square_vcomp.push_back(composite_entry(V.arrow(u).name, V.arrow(l).name, V.arrow(result).name));
        }
    }
    j["square_vcomp"] = square_vcomp;
    return j;
}

Json to_json(const TraceSummary& trace) {
    Json j = Json::object();
    Json stages = Json::array();
    for (const auto& s : trace.sizes) {
        Json e = Json::object();
        e["top"] = s.top;
        e["bot"] = s.bot;
        stages.push_back(e);
    }
    j["stages"] = stages;
    j["iso"] = trace.iso;
    return j;
}

Json to_json(const Certificate& cert, const Presentation& pres) {
    const auto& r = cert.result;
    Json j = Json::object();
    j["format"] = "soa-certificate/1";
    j["presentation"] = cert.presentation;
    j["mode"] = to_string(r.mode);
    j["input"] = to_json(r.input);
    j["stage"] = r.stage;
    j["Ef"] = r.R.top().size;
    j["R"] = to_json(r.R);
    j["L"] = to_json(r.L);
    j["beta0"] = to_json(r.beta0);
    Json table = Json::array();
    for (const auto& e : r.lift_table) {
        Json row = Json::object();
        row["gen"] = pres.vertical.object_name(e.gen);
        row["sigma0"] = to_json(e.sigma0);
        row["sigma1"] = to_json(e.sigma1);
        row["filler"] = to_json(e.filler);
        table.push_back(row);
    }
    j["lift_table"] = table;
    if (cert.trace) {
        j["trace"] = to_json(*cert.trace);
    }
    return j;
}

Certificate certificate_from_json(const Json& j, const Presentation& pres) {
    const std::string where = "certificate";
    only_keys(j, {"format", "presentation", "mode", "input", "stage", "Ef", "R", "L", "beta0", "lift_table", "trace"}, where);
    if (text(field(j, "format", where), "format") != "soa-certificate/1") {
        throw ParseError("certificate: unsupported format");
    }
    Certificate c;
    c.presentation = j.contains("presentation") ? text(j["presentation"], "presentation") : "";
    auto& r = c.result;
    r.mode = parse_mode(text(field(j, "mode", where), "mode"));
    r.input = arrow_from_json(field(j, "input", where));
    r.stage = natural(field(j, "stage", where), "stage");
    r.R = arrow_from_json(field(j, "R", where));
    if (natural(field(j, "Ef", where), "Ef") != r.R.top().size) {
        throw ParseError("certificate: Ef does not match R");
    }
    r.L = map_at(field(j, "L", where), "L");
    r.beta0 = map_at(field(j, "beta0", where), "beta0");
    const Json& table = array(field(j, "lift_table", where), "lift_table");
    for (std::size_t k = 0; k < table.size(); ++k) {
        const std::string at = "lift_table[" + std::to_string(k) + "]";
        only_keys(table[k], {"gen", "sigma0", "sigma1", "filler"}, at);
        const auto gen = object_index(pres.vertical, field(table[k], "gen", at), at + ".gen");
        r.lift_table.push_back({gen, map_at(field(table[k], "sigma0", at), at + ".sigma0"),
                                map_at(field(table[k], "sigma1", at), at + ".sigma1"),
                                map_at(field(table[k], "filler", at), at + ".filler")});
    }
    if (j.contains("trace")) {
        const Json& t = j["trace"];
        TraceSummary s;
        for (const auto& st : array(field(t, "stages", "trace"), "trace.stages")) {
            s.sizes.push_back({natural(field(st, "top", "trace.stages"), "top"), natural(field(st, "bot", "trace.stages"), "bot")});
        }
        for (const auto& b : array(field(t, "iso", "trace"), "trace.iso")) {
            if (!b.is_boolean()) {
                throw ParseError("trace.iso: expected booleans");
            }
            s.iso.push_back(b.get<bool>());
        }
        c.trace = std::move(s);
    }
    return c;
}

Json to_json(const Report& report) {
    Json j = Json::object();
    j["ok"] = report.ok();
    j["checks"] = report.checks;
    j["skipped"] = report.skipped;
    Json counts = Json::object();
    for (const auto& [name, n] : report.counts) {
        counts[name] = n;
    }
    j["counts"] = counts;
    Json failures = Json::array();
    for (const auto& f : report.failures) {
        Json e = Json::object();
        e["check"] = f.check;
        e["witness"] = f.witness;
        failures.push_back(e);
    }
    j["failures"] = failures;
    return j;
}

CommSquare problem_from_json(const Json& j, const Presentation& pres, const ArrowObject& R, std::size_t& gen) {
    only_keys(j, {"gen", "sigma0", "sigma1"}, "problem");
    gen = object_index(pres.vertical, field(j, "gen", "problem"), "problem.gen");
    FiniteMap s0 = map_at(field(j, "sigma0", "problem"), "problem.sigma0");
    FiniteMap s1 = map_at(field(j, "sigma1", "problem"), "problem.sigma1");
    try {
        return CommSquare(ArrowObject(pres.umaps[gen]), R, std::move(s0), std::move(s1));
    } catch (const Error& e) {
        throw ProblemMismatch(std::string("problem is not a square into R: ") + e.what());
    }
}

} // namespace soa
