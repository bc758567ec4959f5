#pragma once

#include <string_view>

// Text assets compiled in from assets/.
namespace semdrift::assets {

std::string_view abbreviations();
std::string_view qa_prompt_call();
std::string_view qa_prompt_answer();
std::string_view biography_prompt();
std::string_view cost_model();

}  // namespace semdrift::assets
