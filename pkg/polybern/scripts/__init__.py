# Package marker for polybern.scripts
