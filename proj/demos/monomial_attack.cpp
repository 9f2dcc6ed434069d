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

// Breaks a key whose conjugator is monomial: the permutation part leaks
// m mod ord(beta) and every pair orbit gives a discrete log.

#include <iostream>

#include "mor/mor.hpp"

int main() {
  mor::Rng rng(7);
  mor::MorParams params;
  params.spec = mor::FieldSpec::prime(31);
  params.d = 5;

  const mor::BigInt m = 7777;
  auto [pk, sk] = mor::keygen_monomial(params, rng, m);
  const mor::MonomialAttackReport rep = mor::monomial_cycle_attack(pk.phi, pk.phi_m);

  std::cout << "nu = " << rep.nu << ", m mod nu = " << rep.m_mod_nu << "\n";
  for (const auto& o : rep.orbits) {
    std::cout << "  orbit of " << o.pairs.size() << " pairs at (" << o.pairs.front().first << ","
              << o.pairs.front().second << "): " << mor::dlog_status_name(o.dlog_status);
    if (o.dlog_status == mor::DlogStatus::kFound)
      std::cout << ", m = " << o.congruence.residue.get_str() << " mod " << o.congruence.modulus.get_str();
    std::cout << "\n";
  }
  if (!rep.recovered) {
    std::cout << "no congruence recovered\n";
    return 1;
  }
  std::cout << "m = " << rep.recovered->residue.get_str() << " mod " << rep.recovered->modulus.get_str()
            << (rep.contains(m) ? " (matches the secret)" : " (does not match)") << "\n";
  return rep.contains(m) ? 0 : 1;
}
