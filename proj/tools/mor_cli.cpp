/*
 * Copyright 2026 The MOR-SL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: key generation, encryption, decryption, parameter
// analysis, attacks and cost benchmarks.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mor/mor.hpp"

namespace {

using mor::BigInt;
using mor::ErrorCode;
using mor::Json;

enum Exit {
  kOk = 0,
  kUnexpected = 1,
  kMalformed = 2,
  kCapacityOrFormat = 3,
  kKeygen = 4,
  kWrongModel = 5,
  kRefusedExit = 6,
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kCapacity:
    case ErrorCode::kFormat:
      return kCapacityOrFormat;
    case ErrorCode::kKeygenFailure:
      return kKeygen;
    case ErrorCode::kWrongAttackModel:
      return kWrongModel;
    case ErrorCode::kRefused:
      return kRefusedExit;
    case ErrorCode::kNotFound:
      return kUnexpected;
    default:
      return kMalformed;
  }
}

struct Preset {
  std::size_t d;
  unsigned p;
  unsigned gamma;
};

std::optional<Preset> preset_named(const std::string& name) {
  if (name == "toy") return Preset{3, 7, 1};
  if (name == "small") return Preset{5, 2, 16};
  if (name == "paper") return Preset{7, 2, 160};
  return std::nullopt;
}

struct ParamArgs {
  std::string preset;
  std::size_t d = 0;
  std::string p;
  std::optional<unsigned> gamma;
  std::string modulus;

  void add_to(CLI::App* app) {
    app->add_option("--preset", preset, "Parameter preset")->check(CLI::IsMember({"toy", "small", "paper"}));
    app->add_option("--d", d, "Matrix degree");
    app->add_option("--p", p, "Field characteristic");
    app->add_option("--gamma", gamma, "Extension degree");
    app->add_option("--modulus", modulus, "Comma-separated modulus coefficients, constant term first");
  }

  // (d, p, gamma) with explicit options overriding the preset.
  std::tuple<std::size_t, BigInt, unsigned> resolve() const {
    std::size_t rd = d;
    BigInt rp = 0;
    unsigned rg = 1;
    if (!preset.empty()) {
      const Preset ps = *preset_named(preset);
      if (rd == 0) rd = ps.d;
      rp = ps.p;
      rg = ps.gamma;
    }
    if (!p.empty()) rp = mor::parse_decimal(p);
    if (gamma) rg = *gamma;
    if (rd == 0 || rp == 0) mor::fail(ErrorCode::kDomain, "need --preset or --d and --p");
    return {rd, rp, rg};
  }

  mor::FieldSpec field() const {
    auto [rd, rp, rg] = resolve();
    (void)rd;
    if (modulus.empty()) return mor::FieldSpec::make(rp, rg);
    std::vector<BigInt> coeffs;
    std::stringstream ss(modulus);
    std::string tok;
    while (std::getline(ss, tok, ',')) coeffs.push_back(mor::parse_decimal(tok));
    return mor::FieldSpec::make(rp, rg, coeffs);
  }
};

mor::Rng make_rng(const std::optional<std::uint64_t>& seed) {
  return seed ? mor::Rng(*seed) : mor::Rng::from_entropy();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) mor::fail(ErrorCode::kMalformedInput, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    mor::fail(ErrorCode::kMalformedInput, path + ": " + e.what());
  }
}

// Files are staged under a temporary name and renamed only after every
// output of the command has been written.
class Staged {
 public:
  void add(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) mor::fail(ErrorCode::kMalformedInput, "cannot write " + path);
    out << content;
    out.close();
    if (!out) mor::fail(ErrorCode::kMalformedInput, "cannot write " + path);
    files_.emplace_back(tmp, path);
  }
  void commit() {
    for (auto& [tmp, path] : files_) std::filesystem::rename(tmp, path);
    files_.clear();
  }
  ~Staged() {
    std::error_code ec;
    for (auto& [tmp, path] : files_) std::filesystem::remove(tmp, ec);
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void refuse_search(const BigInt& bound) {
  const BigInt steps = sqrt(bound) + 1;
  if (mor::bit_length(steps) > 32) {
    mor::fail(ErrorCode::kRefused, "search space of about 2^" + std::to_string(mor::bit_length(bound)) +
                                       " elements is beyond desk scale");
  }
}

// Commands ------------------------------------------------------------------

struct KeygenArgs {
  ParamArgs params;
  std::optional<std::uint64_t> seed;
  std::string out_pub, out_priv;
  bool monomial = false;
  unsigned max_draws = 256;
};

int cmd_keygen(const KeygenArgs& a) {
  mor::MorParams params;
  params.spec = a.params.field();
  params.d = std::get<0>(a.params.resolve());
  params.max_keygen_draws = a.max_draws;
  mor::Rng rng = make_rng(a.seed);
  auto [pk, sk] = a.monomial ? mor::keygen_monomial(params, rng) : mor::keygen(params, rng);
  Staged out;
  out.add(a.out_pub, dump(mor::to_json(pk)));
  out.add(a.out_priv, dump(mor::to_json(sk)));
  out.commit();
  return kOk;
}

struct EncryptArgs {
  std::string pub, in, out;
  std::optional<std::uint64_t> seed;
};

int cmd_encrypt(const EncryptArgs& a) {
  const mor::MorPublicKey pk = mor::public_key_from_json(read_json(a.pub));
  const std::string text = read_file(a.in);
  const std::vector<std::uint8_t> bytes(text.begin(), text.end());
  mor::Rng rng = make_rng(a.seed);
  std::vector<mor::MorCiphertext> blocks;
  for (const auto& m : mor::encode_stream(bytes, pk.params)) blocks.push_back(mor::encrypt(pk, m, rng));
  Staged out;
  out.add(a.out, dump(mor::stream_to_json(blocks)));
  out.commit();
  return kOk;
}

struct DecryptArgs {
  std::string priv, in, out;
};

int cmd_decrypt(const DecryptArgs& a) {
  const mor::MorPrivateKey sk = mor::private_key_from_json(read_json(a.priv));
  const std::vector<mor::MorCiphertext> blocks = mor::stream_from_json(read_json(a.in));
  std::vector<mor::Matrix> plain;
  for (const auto& ct : blocks) plain.push_back(mor::decrypt(sk, ct));
  const std::vector<std::uint8_t> bytes = mor::decode_stream(plain);
  Staged out;
  out.add(a.out, std::string(bytes.begin(), bytes.end()));
  out.commit();
  return kOk;
}

struct AnalyzeArgs {
  ParamArgs params;
  std::string pub, out;
};

std::string fixed(double v, int digits = 2) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

int cmd_analyze(const AnalyzeArgs& a) {
  std::optional<mor::Matrix> conj;
  std::size_t d;
  BigInt p;
  unsigned gamma;
  if (!a.pub.empty()) {
    const mor::MorPublicKey pk = mor::public_key_from_json(read_json(a.pub));
    conj = mor::recover_conjugator(pk.phi);
    d = pk.params.d;
    p = pk.params.spec.p();
    gamma = pk.params.spec.gamma();
  } else {
    std::tie(d, p, gamma) = a.params.resolve();
  }
  const mor::SecurityEstimate e = mor::validate_params(d, p, gamma, conj);
  auto yes_no = [](const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "n/a"; };
  std::ostringstream t;
  t << "d                                  " << e.d << "\n"
    << "q                                  " << mor::to_decimal(e.p) << "^" << e.gamma << "\n"
    << "log2 q                             " << fixed(e.log2_q) << "\n"
    << "DLP target field                   " << e.target_field << "\n"
    << "DLP field exponent                 " << e.dlp_field_exponent << "\n"
    << "index calculus cost (bits, c=" << fixed(e.index_calculus_constant, 3) << ")  "
    << fixed(e.index_calculus_log_cost) << "\n"
    << "index calculus regime              " << mor::regime_name(e.index_calculus_regime) << " (d vs log2 q)\n"
    << "square-root attack (bits)          " << fixed(e.sqrt_attack_bits) << "\n"
    << "lifted char poly irreducible       " << yes_no(e.lift_charpoly_irreducible) << "\n"
    << "conjugator char poly irreducible   " << yes_no(e.conjugator_charpoly_irreducible) << "\n";
  for (const auto& w : e.warnings) t << "warning: " << w << "\n";
  std::cout << t.str();
  if (!a.out.empty()) {
    Staged out;
    out.add(a.out, dump(mor::to_json(e)));
    out.commit();
  } else {
    std::cout << dump(mor::to_json(e));
  }
  return kOk;
}

struct AttackArgs {
  std::string model, pub, out;
  std::uint64_t budget = 0;
};

Json dlog_report(const std::string& model, const mor::DlogResult& r, const BigInt& bound) {
  Json j{{"format_version", mor::kFormatVersion},
         {"model", model},
         {"status", mor::dlog_status_name(r.status)},
         {"search_bound", mor::to_decimal(bound)},
         {"group_ops", r.group_ops}};
  j["m"] = r.found() ? Json(mor::to_decimal(r.n)) : Json(nullptr);
  return j;
}

int cmd_attack(const AttackArgs& a) {
  const mor::MorPublicKey pk = mor::public_key_from_json(read_json(a.pub));
  const mor::FieldSpec& spec = pk.params.spec;
  const std::size_t d = pk.params.d;
  Json report;
  if (a.model == "monomial") {
    refuse_search(spec.q() - 1);
    report = mor::to_json(mor::monomial_cycle_attack(pk.phi, pk.phi_m, a.budget));
  } else if (a.model == "bsgs") {
    const BigInt bound = mor::pgl_order(d, spec.q());
    refuse_search(bound);
    report = dlog_report("bsgs", mor::automorphism_dlog(pk.phi, pk.phi_m, a.budget), bound);
  } else {
    const BigInt bound = (mor::big_pow(spec.q(), d) - 1) / (spec.q() - 1);
    refuse_search(bound);
    const mor::Matrix b = mor::recover_conjugator(pk.phi);
    if (!mor::is_irreducible(mor::char_poly(b))) {
      mor::fail(ErrorCode::kWrongAttackModel, "conjugator characteristic polynomial is reducible");
    }
    const mor::Matrix b_m = mor::recover_conjugator(pk.phi_m);
    mor::DlogResult r;
    try {
      const mor::MwResult res = mor::mw_reduce_lifted(mor::lift_operator(b), mor::lift_operator(b_m), a.budget);
      r.status = mor::DlogStatus::kFound;
      r.n = res.m;
      r.group_ops = res.group_ops;
    } catch (const mor::Error& e) {
      if (e.code() == ErrorCode::kCapacity) {
        r.status = mor::DlogStatus::kBudgetExceeded;
      } else if (e.code() == ErrorCode::kNotFound) {
        r.status = mor::DlogStatus::kNotFound;
      } else {
        throw;
      }
    }
    report = dlog_report("mw", r, bound);
    report["charpoly"] = mor::char_poly(b).to_string();
    report["dlp_field_exponent"] = d * d;
    report["conjugator_field_exponent"] = d;
  }
  if (a.out.empty()) {
    std::cout << dump(report);
  } else {
    Staged out;
    out.add(a.out, dump(report));
    out.commit();
  }
  return kOk;
}

struct BenchArgs {
  ParamArgs params;
  std::optional<std::uint64_t> seed;
  unsigned samples = 1;
  std::string out;
};

int cmd_bench(const BenchArgs& a) {
  const mor::FieldSpec spec = a.params.field();
  const auto [d, p, gamma] = a.params.resolve();
  mor::Rng rng = make_rng(a.seed);
  std::uint64_t total_sum = 0, max_total = 0, max_image = 0;
  double word_len_sum = 0;
  std::size_t words = 0;
  for (unsigned s = 0; s < std::max(1u, a.samples); ++s) {
    const mor::Automorphism phi = mor::Automorphism::from_conjugator(mor::random_gl(spec, d, rng));
    const mor::Automorphism psi = mor::Automorphism::from_conjugator(mor::random_gl(spec, d, rng));
    mor::CompositionCost cost;
    (void)mor::compose(phi, psi, &cost);
    total_sum += cost.total;
    max_total = std::max(max_total, cost.total);
    max_image = std::max(max_image, cost.max_per_image);
    for (const auto& img : phi.images()) {
      word_len_sum += static_cast<double>(mor::decompose(img).size());
      ++words;
    }
  }
  const double dd = static_cast<double>(d);
  const BigInt d4 = mor::big_pow(BigInt(static_cast<unsigned long>(d)), 4);
  const BigInt bound = (p - 1) * gamma * d4 + d4;
  const double estimate = dd * dd + (gamma / 2.0) * std::pow(dd, 2.5);
  const double mean_len = words ? word_len_sum / static_cast<double>(words) : 0.0;
  const unsigned samples = std::max(1u, a.samples);

  std::cout << "d=" << d << " q=" << mor::to_decimal(p) << "^" << gamma << " samples=" << samples << "\n"
            << "field multiplications per composition (mean)       "
            << fixed(static_cast<double>(total_sum) / samples, 1) << "\n"
            << "field multiplications per composition (max)        " << max_total << "\n"
            << "field multiplications per generator image (max)    " << max_image << "\n"
            << "worst-case bound (p-1)*gamma*d^4 + d^4             " << mor::to_decimal(bound) << "\n"
            << "estimate d^2 + (gamma/2)*d^2.5                     " << fixed(estimate, 1) << "\n"
            << "mean transvection word length of images            " << fixed(mean_len, 2) << "\n";
  Json j{{"format_version", mor::kFormatVersion},
         {"d", d},
         {"p", mor::to_decimal(p)},
         {"gamma", gamma},
         {"samples", samples},
         {"composition_mults_mean", static_cast<double>(total_sum) / samples},
         {"composition_mults_max", max_total},
         {"per_image_mults_max", max_image},
         {"worst_case_bound", mor::to_decimal(bound)},
         {"per_image_within_bound", BigInt(mor::from_u64(max_image)) <= bound},
         {"estimate", estimate},
         {"mean_word_length", mean_len}};
  if (!a.out.empty()) {
    Staged out;
    out.add(a.out, dump(j));
    out.commit();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MOR cryptosystem over SL(d, q)"};
  app.require_subcommand(1);

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "Generate a key pair");
  kg.params.add_to(keygen);
  keygen->add_option("--seed", kg.seed, "Seed for reproducible output");
  keygen->add_option("--out-pub", kg.out_pub, "Public key file")->required();
  keygen->add_option("--out-priv", kg.out_priv, "Private key file")->required();
  keygen->add_flag("--monomial", kg.monomial, "Monomial conjugator (weak, for the attack lab)");
  keygen->add_option("--max-draws", kg.max_draws, "Conjugator draws before giving up");

  EncryptArgs en;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a file");
  encrypt->add_option("--pub", en.pub, "Public key file")->required();
  encrypt->add_option("--in", en.in, "Plaintext file")->required();
  encrypt->add_option("--out", en.out, "Ciphertext file")->required();
  encrypt->add_option("--seed", en.seed, "Seed for reproducible output");

  DecryptArgs de;
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a file");
  decrypt->add_option("--priv", de.priv, "Private key file")->required();
  decrypt->add_option("--in", de.in, "Ciphertext file")->required();
  decrypt->add_option("--out", de.out, "Plaintext file")->required();

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Security estimate for parameters or a public key");
  an.params.add_to(analyze);
  analyze->add_option("--pub", an.pub, "Public key file");
  analyze->add_option("--out", an.out, "Write the JSON report here instead of stdout");

  AttackArgs at;
  auto* attack = app.add_subcommand("attack", "Run an attack on a public key");
  attack->add_option("--model", at.model, "Attack model")->required()->check(CLI::IsMember({"monomial", "bsgs", "mw"}));
  attack->add_option("--pub", at.pub, "Public key file")->required();
  attack->add_option("--budget", at.budget, "Group operation budget (0 = unlimited)");
  attack->add_option("--out", at.out, "Report file");

  BenchArgs be;
  auto* bench = app.add_subcommand("bench", "Count field multiplications of one composition");
  be.params.add_to(bench);
  bench->add_option("--seed", be.seed, "Seed for reproducible output");
  bench->add_option("--samples", be.samples, "Number of compositions");
  bench->add_option("--out", be.out, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kMalformed;
  }

  try {
    if (*keygen) return cmd_keygen(kg);
    if (*encrypt) return cmd_encrypt(en);
    if (*decrypt) return cmd_decrypt(de);
    if (*analyze) return cmd_analyze(an);
    if (*attack) return cmd_attack(at);
    if (*bench) return cmd_bench(be);
  } catch (const mor::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnexpected;
  }
  return kUnexpected;
}
