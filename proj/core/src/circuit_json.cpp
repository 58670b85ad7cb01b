#include <string>

#include "bosim/errors.hpp"
#include "bosim/photonics.hpp"
#include "json.hpp"

namespace bosim {

namespace {

using nlohmann::json;

json gate_to_json(const BeamsplitterParams& p) {
  return json{{"theta", p.theta}, {"phi_t", p.phi_t}, {"phi_r", p.phi_r}};
}

BeamsplitterParams gate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("theta") || !j.contains("phi_t") || !j.contains("phi_r"))
    fail(errc::parse, "gate needs theta, phi_t and phi_r");
  BeamsplitterParams p;
  p.theta = j.at("theta").get<double>();
  p.phi_t = j.at("phi_t").get<double>();
  p.phi_r = j.at("phi_r").get<double>();
  return p;
}

}  // namespace

std::string circuit_to_json(const CircuitSpec& spec) {
  json layers = json::array();
  for (const LayerSpec& layer : spec.layers) {
    json gates = json::array();
    for (const BeamsplitterParams& g : layer.gates) gates.push_back(gate_to_json(g));
    layers.push_back(json{{"parity", layer.parity}, {"gates", std::move(gates)}});
  }
  json doc{{"m", spec.m}, {"depth", spec.depth}, {"layers", std::move(layers)}};
  if (spec.seed) doc["seed"] = *spec.seed;
  return doc.dump();
}

CircuitSpec circuit_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse, std::string("invalid circuit JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("m") || !doc.contains("depth") || !doc.contains("layers"))
      fail(errc::parse, "circuit JSON needs m, depth and layers");
    CircuitSpec spec;
    spec.m = doc.at("m").get<int>();
    spec.depth = doc.at("depth").get<int>();
    const json& layers = doc.at("layers");
    if (!layers.is_array()) fail(errc::parse, "layers must be an array");
    for (const json& jl : layers) {
      if (!jl.is_object() || !jl.contains("parity") || !jl.contains("gates"))
        fail(errc::parse, "layer needs parity and gates");
      LayerSpec layer;
      layer.parity = jl.at("parity").get<int>();
      if (layer.parity != 0 && layer.parity != 1) fail(errc::parse, "layer parity must be 0 or 1");
      const json& gates = jl.at("gates");
      if (!gates.is_array()) fail(errc::parse, "gates must be an array");
      for (const json& jg : gates) layer.gates.push_back(gate_from_json(jg));
      spec.layers.push_back(std::move(layer));
    }
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
    return spec;
  } catch (const json::exception& e) {
    fail(errc::parse, std::string("invalid circuit JSON: ") + e.what());
  }
}

}  // namespace bosim
