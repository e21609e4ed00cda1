// Copyright (c) 2026 The fsolink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 -mfma; keep anything AVX2-specific confined here.

#include "fsolink/kernels/link_batch_impl.hpp"
#include "fsolink/kernels/pack_avx2.hpp"

namespace fsolink::kern {

void link_stage_a_avx2(const LinkBatchIn& in, const LinkBatchOut& out,
                       const LinkChainConstants& c, std::size_t n_packs4) {
  link_stage_a_packs<Pack4>(in, out, c, 0, n_packs4 * 4);
}

void link_stage_b_avx2(const LinkBatchOut& out, const LinkChainConstants& c,
                       std::size_t n_packs4) {
  link_stage_b_packs<Pack4>(out, c, 0, n_packs4 * 4);
}

}  // namespace fsolink::kern
