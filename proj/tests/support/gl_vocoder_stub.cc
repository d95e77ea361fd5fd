// Copyright (c) 2026 The ctts Authors
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

// Test double for an external vocoder: `gl_vocoder_stub MEL_IN WAV_OUT`
// inverts the mel file with Griffin-Lim.

#include <exception>
#include <iostream>

#include "ctts/audio/griffin_lim.h"
#include "ctts/audio/mel_io.h"
#include "ctts/audio/wav.h"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: gl_vocoder_stub MEL_IN WAV_OUT\n";
    return 2;
  }
  try {
    ctts::WriteWav(argv[2], ctts::GriffinLim(ctts::ReadMel(argv[1]), 8));
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
