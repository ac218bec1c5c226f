/*
Copyright 2026 The kinlex Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef KINLEX_KINLEX_HPP_
#define KINLEX_KINLEX_HPP_

#include "kinlex/errors.hpp"
#include "kinlex/evalkit.hpp"
#include "kinlex/gapengine.hpp"
#include "kinlex/ingest.hpp"
#include "kinlex/kinmodel.hpp"
#include "kinlex/language.hpp"
#include "kinlex/latticegen.hpp"
#include "kinlex/lexicon.hpp"
#include "kinlex/pipeline.hpp"
#include "kinlex/resourceio.hpp"
#include "kinlex/semdist.hpp"
#include "kinlex/text.hpp"

#endif  // KINLEX_KINLEX_HPP_
