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

// Encrypts a short message under a toy key and reads it back.

#include <iostream>
#include <string>
#include <vector>

#include "mor/mor.hpp"

int main() {
  mor::Rng rng(2026);
  mor::MorParams params;
  params.spec = mor::FieldSpec::make(2, 16);
  params.d = 3;

  auto [pk, sk] = mor::keygen(params, rng);
  std::cout << "field GF(2^16), SL(3), secret exponent " << sk.m.get_str() << "\n";

  const std::string text = "attack at dawn";
  const std::vector<std::uint8_t> bytes(text.begin(), text.end());
  const std::vector<mor::Matrix> blocks = mor::encode_stream(bytes, params);

  std::vector<mor::Matrix> recovered;
  for (const auto& block : blocks) {
    const mor::MorCiphertext ct = mor::encrypt(pk, block, rng);
    recovered.push_back(mor::decrypt(sk, ct));
  }
  const std::vector<std::uint8_t> out = mor::decode_stream(recovered);
  std::cout << blocks.size() << " blocks, decrypted: " << std::string(out.begin(), out.end()) << "\n";
  return std::string(out.begin(), out.end()) == text ? 0 : 1;
}
