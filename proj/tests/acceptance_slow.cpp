#include <cstdio>
int main(){ std::puts("SKIP"); return 77; }
