#include "ehrhart/spec_io.hpp"

#include "ehrhart/errors.hpp"
#include "ehrhart/polynomial.hpp"

#include <cstdio>

namespace ehrhart {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path.empty() ? "/" : path, what); }

const json& member(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path, std::string("missing \"") + key + "\"");
    return j.at(key);
}

const json& array_member(const json& j, const std::string& path, const char* key) {
    const json& a = member(j, path, key);
    if (!a.is_array()) fail(path + "/" + key, "expected an array");
    return a;
}

BigInt integer_at(const json& j, const std::string& path) {
    try {
        return bigint_from_json(j);
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

std::vector<BigInt> integer_vector(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of integers");
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer_at(j[i], path + "/" + std::to_string(i)));
    return out;
}

std::vector<Interval> intervals_at(const json& j, const std::string& path) {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        auto pair = integer_vector(j[i], p);
        if (pair.size() != 2) fail(p, "interval must be [lo, hi]");
        if (pair[0] > pair[1]) fail(p, "empty interval [" + pair[0].get_str() + "," + pair[1].get_str() + "]");
        out.push_back({pair[0], pair[1]});
    }
    return out;
}

LatticePolytope parse_node(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const json& kind_j = member(j, path, "kind");
    if (!kind_j.is_string()) fail(path + "/kind", "expected a string");
    const std::string kind = kind_j.get<std::string>();

    try {
        if (kind == "simplex") {
            const json& verts = array_member(j, path, "vertices");
            std::vector<LatticePoint> vs;
            for (std::size_t i = 0; i < verts.size(); ++i)
                vs.push_back(integer_vector(verts[i], path + "/vertices/" + std::to_string(i)));
            return Simplex(std::move(vs));
        }
        if (kind == "box") {
            bool degenerate = false;
            if (j.contains("allow_degenerate")) {
                if (!j["allow_degenerate"].is_boolean()) fail(path + "/allow_degenerate", "expected a boolean");
                degenerate = j["allow_degenerate"].get<bool>();
            }
            return Box(intervals_at(array_member(j, path, "intervals"), path + "/intervals"), degenerate);
        }
        if (kind == "product") {
            const json& fs = array_member(j, path, "factors");
            std::vector<LatticePolytope> factors;
            for (std::size_t i = 0; i < fs.size(); ++i) factors.push_back(parse_node(fs[i], path + "/factors/" + std::to_string(i)));
            return Product(std::move(factors));
        }
        if (kind == "hrep") {
            const json& dim_j = member(j, path, "dim");
            if (!dim_j.is_number_unsigned()) fail(path + "/dim", "expected a positive integer");
            if (!j.contains("bbox")) fail(path, "hrep requires an explicit \"bbox\"");
            const json& ineqs = array_member(j, path, "inequalities");
            std::vector<Inequality> parsed;
            for (std::size_t i = 0; i < ineqs.size(); ++i) {
                const std::string p = path + "/inequalities/" + std::to_string(i);
                if (!ineqs[i].is_object()) fail(p, "expected {\"normal\": [...], \"rhs\": ...}");
                parsed.push_back({integer_vector(member(ineqs[i], p, "normal"), p + "/normal"),
                                  integer_at(member(ineqs[i], p, "rhs"), p + "/rhs")});
            }
            return HRep(dim_j.get<std::size_t>(), std::move(parsed), intervals_at(array_member(j, path, "bbox"), path + "/bbox"));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const InputError& e) {
        fail(path, e.what());
    }
    fail(path + "/kind", "unknown kind \"" + kind + "\"");
}

ordered_json int_array(const std::vector<BigInt>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

ordered_json interval_array(const std::vector<Interval>& ivs) {
    ordered_json a = ordered_json::array();
    for (const auto& iv : ivs) a.push_back(ordered_json::array({to_json(iv.lo), to_json(iv.hi)}));
    return a;
}

}  // namespace

LatticePolytope spec_from_json(const json& j) { return parse_node(j, ""); }

LatticePolytope parse_spec(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
    return spec_from_json(j);
}

ordered_json spec_to_json(const LatticePolytope& p) {
    ordered_json out;
    if (const auto* s = p.get_if<Simplex>()) {
        out["kind"] = "simplex";
        ordered_json vs = ordered_json::array();
        for (const auto& v : s->vertices()) vs.push_back(int_array(v));
        out["vertices"] = vs;
    } else if (const auto* b = p.get_if<Box>()) {
        out["kind"] = "box";
        out["intervals"] = interval_array(b->intervals());
        if (b->allow_degenerate()) out["allow_degenerate"] = true;
    } else if (const auto* pr = p.get_if<Product>()) {
        out["kind"] = "product";
        ordered_json fs = ordered_json::array();
        for (const auto& f : pr->factors()) fs.push_back(spec_to_json(f));
        out["factors"] = fs;
    } else if (const auto* h = p.get_if<HRep>()) {
        out["kind"] = "hrep";
        out["dim"] = h->dimension();
        ordered_json ineqs = ordered_json::array();
        for (const auto& ineq : h->inequalities()) {
            ordered_json row;
            row["normal"] = int_array(ineq.normal);
            row["rhs"] = to_json(ineq.rhs);
            ineqs.push_back(row);
        }
        out["inequalities"] = ineqs;
        out["bbox"] = interval_array(h->bbox());
    }
    return out;
}

std::string serialize_spec(const LatticePolytope& p) { return spec_to_json(p).dump(); }

std::string spec_hash(const LatticePolytope& p) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_spec(p)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace ehrhart
