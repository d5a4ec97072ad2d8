from fcl.cli import entry

entry()
