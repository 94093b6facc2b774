#include <iostream>
int main() { std::cout << "ywq\n"; return 0; }
