#include "margene/simgen.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "margene/rng.hpp"

namespace margene {

namespace {

// Stream channels; arbitrary distinct tags.
constexpr std::uint64_t kDataChannel = 1;
constexpr std::uint64_t kEffectChannel = 2;
constexpr std::uint64_t kNoiseChannel = 3;

double h_transform(double z) {
  // H(z) = 2 Phi(z) - 1 = erf(z / sqrt 2)
  return std::erf(z / std::sqrt(2.0));
}

}  // namespace

void SimScenario::validate() const {
  if (p == 0) throw std::invalid_argument("scenario: p must be >= 1");
  if (two_sample()) {
    if (n1 < 2 || n2 < 2) {
      throw std::invalid_argument("scenario: m4 needs n1 >= 2 and n2 >= 2");
    }
  } else {
    if (n < 2) throw std::invalid_argument("scenario: needs n >= 2");
  }
  if (model == SimModel::m2 || model == SimModel::m3) {
    if (window_len < 1 || window_step < 1) {
      throw std::invalid_argument("scenario: window_len and window_step must be >= 1");
    }
  }
  if (n_effect_genes > p) {
    throw std::invalid_argument("scenario: n_effect_genes must be <= p");
  }
  if (!(effect_low <= effect_high)) {
    throw std::invalid_argument("scenario: empty effect range");
  }
  if (noise && noise->epsilon < 0.0) {
    throw std::invalid_argument("scenario: noise epsilon must be >= 0");
  }
}

GeneratedData generate(const SimScenario& s, std::uint64_t replicate) {
  s.validate();
  const std::size_t arrays = s.total_arrays();
  GeneratedData out;
  out.values = Matrix(s.p, arrays);
  out.effects.assign(s.p, 0.0);

  rng::Stream effect_stream(s.seed, replicate, kEffectChannel, 0);
  for (std::size_t g = 0; g < s.n_effect_genes; ++g) {
    out.effects[g] =
        s.effect_low + (s.effect_high - s.effect_low) * effect_stream.uniform(g);
  }

  for (std::size_t a = 0; a < arrays; ++a) {
    rng::Stream data(s.seed, replicate, kDataChannel, a);
    const bool in_group1 = !s.two_sample() || a < s.n1;
    for (std::size_t g = 0; g < s.p; ++g) {
      double x;
      switch (s.model) {
        case SimModel::m1:
          x = h_transform(data.normal(g));
          break;
        case SimModel::m2:
        case SimModel::m3: {
          // Window of length k over the array's normal stream, starting at
          // position (g)(m) when counting from zero.
          const std::uint64_t start = static_cast<std::uint64_t>(g) * s.window_step;
          double sum = 0.0;
          for (std::size_t l = 0; l < s.window_len; ++l) {
            sum += data.normal(start + l);
          }
          x = h_transform(sum / std::sqrt(static_cast<double>(s.window_len)));
          break;
        }
        case SimModel::m4:
          x = 2.0 * data.uniform(g) - 1.0;
          break;
        default:
          throw std::logic_error("unreachable model");
      }
      if (in_group1) x += out.effects[g];
      out.values.at(g, a) = x;
    }
  }

  if (s.noise) {
    Matrix pert = out.values;
    const double eps = s.noise->epsilon;
    for (std::size_t a = 0; a < arrays; ++a) {
      rng::Stream noise(s.seed, replicate, kNoiseChannel, a);
      if (s.noise->shape == NoiseShape::constant_per_array) {
        const double delta = eps * (2.0 * noise.uniform(0) - 1.0);
        for (std::size_t g = 0; g < s.p; ++g) pert.at(g, a) += delta;
      } else {
        for (std::size_t g = 0; g < s.p; ++g) {
          pert.at(g, a) += eps * (2.0 * noise.uniform(g) - 1.0);
        }
      }
    }
    out.perturbed = std::move(pert);
  }
  return out;
}

const char* to_string(SimModel m) {
  switch (m) {
    case SimModel::m1: return "m1";
    case SimModel::m2: return "m2";
    case SimModel::m3: return "m3";
    case SimModel::m4: return "m4";
  }
  return "unknown";
}

const char* to_string(NoiseShape s) {
  return s == NoiseShape::uniform_pm ? "uniform_pm" : "constant_per_array";
}

std::string to_config(const SimScenario& s) {
  std::ostringstream os;
  os << "model = " << to_string(s.model) << "\n";
  if (s.two_sample()) {
    os << "n1 = " << s.n1 << "\n";
    os << "n2 = " << s.n2 << "\n";
  } else {
    os << "n = " << s.n << "\n";
  }
  os << "p = " << s.p << "\n";
  if (s.model == SimModel::m2 || s.model == SimModel::m3) {
    os << "window_len = " << s.window_len << "\n";
    os << "window_step = " << s.window_step << "\n";
  }
  os << "effect_genes = " << s.n_effect_genes << "\n";
  os << "effect_low = " << s.effect_low << "\n";
  os << "effect_high = " << s.effect_high << "\n";
  if (s.noise) {
    os << "noise_epsilon = " << s.noise->epsilon << "\n";
    os << "noise_shape = " << to_string(s.noise->shape) << "\n";
  }
  os << "seed = " << s.seed << "\n";
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

SimScenario scenario_from_config(const std::string& text) {
  SimScenario s;
  bool have_noise_eps = false;
  NoiseSpec noise;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("scenario config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto as_count = [&](const std::string& v) -> std::size_t {
      return static_cast<std::size_t>(std::stoull(v));
    };
    try {
      if (key == "model") {
        if (value == "m1") s.model = SimModel::m1;
        else if (value == "m2") s.model = SimModel::m2;
        else if (value == "m3") s.model = SimModel::m3;
        else if (value == "m4") s.model = SimModel::m4;
        else throw std::invalid_argument("unknown model '" + value + "' (valid: m1 m2 m3 m4)");
      } else if (key == "n") {
        s.n = as_count(value);
      } else if (key == "n1") {
        s.n1 = as_count(value);
      } else if (key == "n2") {
        s.n2 = as_count(value);
      } else if (key == "p") {
        s.p = as_count(value);
      } else if (key == "window_len") {
        s.window_len = as_count(value);
      } else if (key == "window_step") {
        s.window_step = as_count(value);
      } else if (key == "effect_genes") {
        s.n_effect_genes = as_count(value);
      } else if (key == "effect_low") {
        s.effect_low = std::stod(value);
      } else if (key == "effect_high") {
        s.effect_high = std::stod(value);
      } else if (key == "noise_epsilon") {
        noise.epsilon = std::stod(value);
        have_noise_eps = true;
      } else if (key == "noise_shape") {
        if (value == "uniform_pm") noise.shape = NoiseShape::uniform_pm;
        else if (value == "constant_per_array") noise.shape = NoiseShape::constant_per_array;
        else throw std::invalid_argument("unknown noise_shape '" + value + "'");
        have_noise_eps = true;
      } else if (key == "seed") {
        s.seed = std::stoull(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("scenario config line " + std::to_string(lineno) +
                                  ": bad value for '" + key + "'");
    }
  }
  if (have_noise_eps) s.noise = noise;
  s.validate();
  return s;
}

}  // namespace margene
