#include "qseries/registry.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qseries {

namespace {

using nlohmann::json;

PrimeCondition parse_prime(const json &j) {
    PrimeCondition c;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "any") {
        c.kind = PrimeCondition::Kind::AnyPrime;
    } else if (kind == "legendre") {
        c.kind = PrimeCondition::Kind::Legendre;
        c.xi = j.at("xi").get<std::int64_t>();
    } else {
        throw std::runtime_error("unknown prime condition kind '" + kind + "'");
    }
    c.min_p = j.at("min_p").get<std::int64_t>();
    return c;
}

CongruenceCheck parse_congruence(const json &j) {
    CongruenceCheck c;
    c.id = j.at("id").get<std::string>();
    c.paper_label = j.at("paper_label").get<std::string>();
    c.series = j.at("series").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ap-vanishing")
        c.kind = CongruenceCheck::Kind::ApVanishing;
    else if (kind == "series-congruence")
        c.kind = CongruenceCheck::Kind::SeriesCongruence;
    else if (kind == "j-family")
        c.kind = CongruenceCheck::Kind::JFamily;
    else
        throw std::runtime_error("unknown check kind '" + kind + "'");
    c.stride = j.at("stride").get<std::int64_t>();
    const auto &off = j.at("offset");
    c.offset.u = off.at("u").get<std::int64_t>();
    c.offset.v = off.at("v").get<std::int64_t>();
    c.offset.w = off.at("w").get<std::int64_t>();
    c.modulus = j.at("modulus").get<unsigned>();
    mod_bits_for(c.modulus); /* validate early */
    if (j.contains("rhs"))
        c.rhs = j.at("rhs").get<std::string>();
    if (c.kind == CongruenceCheck::Kind::SeriesCongruence && c.rhs.empty())
        throw std::runtime_error("series congruence '" + c.id +
                                 "' needs an rhs expression");
    if (j.contains("prime"))
        c.prime = parse_prime(j.at("prime"));
    if (j.contains("alpha_max"))
        c.alpha_max = j.at("alpha_max").get<int>();
    return c;
}

IntermediateCheck parse_intermediate(const json &j) {
    IntermediateCheck c;
    c.id = j.at("id").get<std::string>();
    c.paper_label = j.at("paper_label").get<std::string>();
    c.series = j.at("series").get<std::string>();
    c.stride = j.at("stride").get<std::int64_t>();
    c.residue = j.at("residue").get<std::int64_t>();
    const std::string relation = j.at("relation").get<std::string>();
    if (relation == "exact") {
        c.exact = true;
    } else if (relation == "mod") {
        c.exact = false;
        c.modulus = j.at("modulus").get<unsigned>();
        mod_bits_for(c.modulus);
    } else {
        throw std::runtime_error("unknown relation '" + relation + "'");
    }
    c.rhs = j.at("rhs").get<std::string>();
    return c;
}

InterpretationCheck parse_interpretation(const json &j) {
    InterpretationCheck c;
    c.id = j.at("id").get<std::string>();
    c.paper_label = j.at("paper_label").get<std::string>();
    c.series = j.at("series").get<std::string>();
    c.constraint.modulus = j.at("modulus").get<std::int64_t>();
    c.constraint.colours = j.at("colours").get<std::vector<unsigned>>();
    c.constraint.overlined = j.at("overlined").get<bool>();
    c.constraint.validate();
    return c;
}

} // namespace

Registry parse_registry(const std::string &json_text) {
    json root = json::parse(json_text);
    Registry reg;
    for (const auto &j : root.at("interpretations"))
        reg.interpretations.push_back(parse_interpretation(j));
    for (const auto &j : root.at("congruences"))
        reg.congruences.push_back(parse_congruence(j));
    for (const auto &j : root.at("intermediates"))
        reg.intermediates.push_back(parse_intermediate(j));
    return reg;
}

Registry load_registry(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open registry file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_registry(buf.str());
}

} // namespace qseries
