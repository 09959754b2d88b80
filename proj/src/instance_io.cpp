#include "gbcsp/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "json.hpp"

namespace gbcsp {

std::string to_text(const Instance& instance) {
  const Params& params = instance.params();
  std::string out = fmt::format("{{\n  \"n\": {},\n  \"d\": {},\n  \"k\": {},\n  \"q\": {},\n",
                                params.n(), params.d(), params.k(), params.q());
  if (instance.constraints().empty()) {
    out += "  \"constraints\": []\n}\n";
    return out;
  }
  out += "  \"constraints\": [\n";
  const auto& constraints = instance.constraints();
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const ConstraintSpec& c = constraints[i];
    out += fmt::format("    {{\"scope\": [{}], \"incompatible\": [", fmt::join(c.scope, ", "));
    for (std::size_t j = 0; j < c.incompatible.size(); ++j) {
      if (j != 0) out += ", ";
      out += fmt::format("[{}]", fmt::join(c.incompatible[j], ", "));
    }
    out += i + 1 == constraints.size() ? "]}\n" : "]},\n";
  }
  out += "  ]\n}\n";
  return out;
}

Instance instance_from_text(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  try {
    const auto n = doc.at("n").get<std::int64_t>();
    const auto d = doc.at("d").get<std::int64_t>();
    const auto k = doc.at("k").get<std::int64_t>();
    const json& list = doc.at("constraints");
    if (!list.is_array()) throw Error(ErrorKind::Parse, "constraints must be an array");
    std::int64_t q = 0;
    if (doc.contains("q")) {
      q = doc.at("q").get<std::int64_t>();
    } else if (!list.empty()) {
      q = static_cast<std::int64_t>(list.front().at("incompatible").size());
    } else {
      throw Error(ErrorKind::Parse, "q is required when there are no constraints");
    }
    const Params params =
        Params::validate(n, d, k, static_cast<std::int64_t>(list.size()), q);

    std::vector<ConstraintSpec> constraints;
    constraints.reserve(list.size());
    for (const json& entry : list) {
      constraints.push_back(ConstraintSpec::make(entry.at("scope").get<std::vector<VarIndex>>(),
                                                 entry.at("incompatible").get<std::vector<Tuple>>(),
                                                 params));
    }
    return Instance(params, std::move(constraints));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}' for reading", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return instance_from_text(buffer.str());
}

void write_instance(const std::filesystem::path& path, const Instance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, fmt::format("cannot open '{}' for writing", path.string()));
  out << to_text(instance);
  if (!out) throw Error(ErrorKind::Io, fmt::format("write to '{}' failed", path.string()));
}

}  // namespace gbcsp
