# Split deletion - command-line tools
